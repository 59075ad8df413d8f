//! Workload generators. A workload turns (node, period) into the updates that
//! node performs in that period, each given as a δ-mutator on one object.

mod micro;
mod retwis;
mod zipf;

use rand_chacha::ChaCha8Rng;

use crate::lattice::{Canonical, Lattice};
use crate::{ObjectId, ReplicaId};

pub use micro::{GCounterWorkload, GMapWorkload, GSetWorkload, MapState};
pub use retwis::{Retwis, RetwisObject, RetwisOp, CONTENT_BYTES, TWEET_ID_BYTES};
pub use zipf::Zipf;

pub type Mutator<L> = Box<dyn FnOnce(&L) -> L + Send>;

pub struct Update<L> {
    pub object: ObjectId,
    pub mutator: Mutator<L>,
}

impl<L> Update<L> {
    pub fn new(object: ObjectId, mutator: impl FnOnce(&L) -> L + Send + 'static) -> Self {
        Update {
            object,
            mutator: Box::new(mutator),
        }
    }
}

pub trait Workload {
    type State: Lattice + Canonical;

    /// Label written to metrics output.
    fn label(&self) -> String;

    /// Number of periods in which nodes perform operations.
    fn periods(&self) -> u64;

    /// Updates performed by `node` in `period`. `rng` is the node's own
    /// stream. Called once per node per period, nodes in id order.
    fn next_ops(
        &mut self,
        node: ReplicaId,
        period: u64,
        rng: &mut ChaCha8Rng,
    ) -> Vec<Update<Self::State>>;
}
