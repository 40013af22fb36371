//! Linear codes from skew generators, exact distances and Gray images.

pub mod code;
pub mod distance;
pub mod gray;
pub mod linalg;
pub mod rl;

pub use code::{code_from_generator, tau_shift, LinearCode, SkewCyclicCode};
pub use distance::{classify, enumerate_min_distance, min_distance, Classification, DistanceResult, DistanceStatus};
pub use gray::{candidate_matrices, gray_image, gray_matrix_check, gray_word, GrayCandidate, GrayMatrix};
pub use rl::{rl_code_build, RlCode};
