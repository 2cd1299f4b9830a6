//! Gradient-sequence generators and lower-bound witness search.

mod binomial;
mod sequences;
mod witness;

pub use binomial::{binom_tail_bruteforce, TailProbability, ENUMERATION_CAP};
pub use sequences::{ftrl_bad_sequences, rademacher, rademacher_stream, SequenceKind, SequenceSpec};
pub use witness::{k_of_t, lower_bound_search, LowerBoundWitness, SearchConfig, SearchOutcome};
