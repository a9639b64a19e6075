//! Frames, the braid-valued connection, and bounded balls of the cover.

mod ball;
mod connection;
mod frame;

pub use ball::{build_cover_ball, BallNode, CoverBall, FiberEntry, FiberReport, Step, Verdict, MAX_RELATION_DIAMETER};
pub use connection::{Connection, ConnectionReport};
pub use frame::{disc_frame, transport_frame, transport_path, tree_frames, Direction, TwistFrame};
