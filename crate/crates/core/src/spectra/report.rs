use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMethod {
    Dense,
    Iterative,
}

/// How `DickeMembership::residual` was measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipMetric {
    /// `|| d - P d ||` with `P` the projector onto the extremal eigenspace.
    Projection,
    /// `min_lambda || S d - lambda d || / |lambda|` over the extremal values found.
    EigenResidual,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DickeMembership {
    pub m: usize,
    pub residual: f64,
    /// `<m,n|S|m,n>` for the normalized Dicke state.
    pub rayleigh: f64,
    pub in_extremal_eigenspace: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub operator: String,
    pub operator_hash: String,
    pub method: SpectrumMethod,
    pub solver: String,
    pub max_abs: f64,
    pub max_eigenvalue: f64,
    pub min_eigenvalue: f64,
    /// Distinct signed eigenvalues with `|lambda| = max_abs` (within tolerance).
    pub extremal_values: Vec<f64>,
    /// Eigenvalue count with `|lambda| = max_abs`; dense path only.
    pub extremal_multiplicity: Option<usize>,
    /// All `2^n` eigenvalues, ascending; dense path only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eigenvalues: Option<Vec<f64>>,
    pub dicke_membership: Vec<DickeMembership>,
    pub membership_metric: MembershipMetric,
    pub converged: bool,
    pub iterations: usize,
    /// Diagonalized blocks; dense path only.
    pub blocks: Option<usize>,
    pub tolerance: f64,
}

impl SpectralReport {
    pub fn membership(&self, m: usize) -> Option<&DickeMembership> {
        self.dicke_membership.iter().find(|d| d.m == m)
    }

    pub fn with_operator_name(mut self, name: impl Into<String>) -> Self {
        self.operator = name.into();
        self
    }
}
