//! Concrete CRDTs and the composition constructs used to build new ones.

mod chain;
mod dynamic;
mod gcounter;
mod gmap;
mod gset;
mod lex;
mod maxset;
mod pair;
mod pncounter;
mod sum;

pub use chain::Max;
pub use dynamic::{Value, TYPE_TAGS};
pub use gcounter::GCounter;
pub use gmap::GMap;
pub use gset::GSet;
pub use lex::LexPair;
pub use maxset::{FiniteDownSet, MaxSet, Point, Poset};
pub use pair::Pair;
pub use pncounter::PNCounter;
pub use sum::LinearSum;
