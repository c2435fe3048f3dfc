//! Shared workload builders for the kernel benchmarks.

use qtan_core::qseries::tan_q;
use qtan_core::ZSeries;

/// The series −z·tan_q(z) at the given truncation order, the input to
/// continued-fraction extraction.
pub fn minus_z_tan(order: usize) -> ZSeries {
    tan_q(order - 1).shift_z(1).neg()
}
