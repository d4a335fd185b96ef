//! Elements of `V(G)`: pairs of partition sets joined by a wreath datum of
//! labels and a permutation. `V` itself is the case of the trivial group.

mod center;
mod format;
mod table;

pub use center::{center_probes, CenterResult};
pub use format::GTableJson;
pub use table::{GTable, Order};
