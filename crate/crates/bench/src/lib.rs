//! Fixtures shared by the kernel benchmarks.

use ramify::degree::{build_fiber_ideal, ChartKind, FiberIdealSpec};
use ramify::scroll::Frame;
use ramify::{Partition, Prime};

pub fn prime() -> Prime {
    Prime::new(32003).expect("32003 is prime")
}

pub fn partition(s: &str) -> Partition {
    s.parse().expect("valid partition")
}

/// A generic frame for `partition` at seed 1.
pub fn frame(s: &str) -> Frame {
    Frame::random(&partition(s), prime(), 1, 0)
}

/// The fiber ideal that the degree computation solves for `partition`.
pub fn fiber(s: &str) -> FiberIdealSpec {
    build_fiber_ideal(&partition(s), prime(), 1, ChartKind::Monomial).expect("generic base point")
}
