//! Pauli streams, the trace-alternating form, stabilizer windows and the
//! transfer from self-orthogonal classical codes to quantum codes.

pub mod pauli;
pub mod quantum;
pub mod window;

pub use pauli::{commutes, tau, tau_inverse, trace_alternating, PauliVec, TraceAltContext};
pub use quantum::{
    certificate_error, classical_image, is_detectable, quantum_from_euclidean, quantum_from_hermitian,
    singleton_bound, Detector, DfInterval, DistancePath, QuantumConvCode, QuantumOptions, QuantumSource,
    SourceForm,
};
pub use window::{assemble, build_stabilizer_window, window_rate, StabilizerWindow, WindowChecks};
