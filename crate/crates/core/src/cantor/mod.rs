//! Finite words, eventually periodic points of the Cantor space `{0,1}^ℕ`,
//! and partition sets (complete prefix codes).

mod partition;
mod point;
mod word;

pub use partition::{common_refinement, PartitionSet};
pub use point::{enumerate_points, points_iter, CantorPoint};
pub use word::{lex_cmp, Word, MAX_WORD_LEN};
