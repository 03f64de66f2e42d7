//! Mutual-information functions of binary multiple access channels and the
//! matroids they induce.
//!
//! A channel's uniform mutual information function (UMIF) is always a
//! polymatroid; when it is integer valued it is the rank function of a binary
//! matroid, and the channel is equivalent to the linear deterministic channel
//! of a representation of that matroid. The modules build each piece of that
//! correspondence:
//!
//! * [`matroid`], [`polymatroid`]: rank tables, duals, minors, isomorphism.
//! * [`f2`], [`binary`]: F₂ linear algebra and binary representability.
//! * [`info`], [`channel`]: exact joints, MACs and their (U)MIF.
//! * [`extremal`], [`recursion`]: integer-UMIF channels, kernels, two-user bridges.
//! * [`quasi`]: near-integer UMIF and posterior concentration.
//! * [`format`]: JSON and text file formats.

pub mod binary;
pub mod channel;
pub mod extremal;
pub mod f2;
pub mod format;
pub mod info;
pub mod matroid;
pub mod polymatroid;
pub mod quasi;
pub mod recursion;
pub mod subset;

pub use binary::{find_representation, is_binary_tutte, is_binary_whitney, vector_matroid, Representation};
pub use channel::{Channel, ChannelError, Prob};
pub use extremal::{ExtremalCertificate, ExtremalError, StarAssignment, DEFAULT_TOL};
pub use f2::{F2Matrix, F2Subspace};
pub use info::JointDistribution;
pub use matroid::{Matroid, MatroidError};
pub use subset::{SetFunction, Subset};
