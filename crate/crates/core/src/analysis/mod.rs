//! Distances between density matrices and the hypothesis tests used to
//! compare experiment outcomes.

mod eigen;
mod metrics;
mod stats;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use metrics::{fidelity, metric_report, trace_distance, MetricReport};
pub use stats::{anova_one_way, normal_cdf, ztest_one_sided, TestResult};
