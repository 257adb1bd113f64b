//! Reference table of extremal `B_n` eigenvalues for `n = 3..10`, as
//! tabulated in the literature: `(n, m, lambda)` with the Dicke weight `m`
//! of the listed eigenstate.

pub const ROWS: &[(usize, usize, i64)] = &[
    (3, 1, -4),
    (3, 2, 4),
    (4, 2, -8),
    (5, 2, -12),
    (5, 3, 12),
    (6, 3, -18),
    (7, 3, -24),
    (7, 4, 24),
    (8, 4, -32),
    (9, 4, -40),
    (9, 5, 40),
    (10, 5, -50),
];

pub fn lambda(n: usize, m: usize) -> Option<i64> {
    ROWS.iter().find(|r| r.0 == n && r.1 == m).map(|r| r.2)
}

pub fn covers(n: usize) -> bool {
    ROWS.iter().any(|r| r.0 == n)
}
