//! Elements of the twisted Brin–Thompson group `SV_G`: matched partitions of
//! the Cantor cube `𝒞^S` into dyadic bricks, with a twist per piece.

mod brick;
mod format;
mod table;

pub use brick::{twist_apply, twist_brick, validate_brick_partition, BrickFn, CubePoint};
pub use format::{format_brick, format_cube_point, parse_brick, parse_cube_point, PieceJson, TwistTableJson};
pub use table::{Piece, TwistTable};
