//! A proof-net theorem prover for first-order multiplicative intuitionistic
//! linear logic (MILL1), used as a type-logical grammar toolkit.
//!
//! Lambek-calculus lexicons are translated into MILL1 over string positions;
//! sentences are parsed by searching for axiom matchings whose proof
//! structures pass a graph-contraction correctness criterion; meanings are
//! read off the resulting proofs as linear lambda terms.
//!
//! ```
//! use linnet::{parse_sequent, prove, SearchConfig};
//!
//! let seq = parse_sequent("np(0,1), forall x.(np(x,1) -o s(x,2)) |- s(0,2)").unwrap();
//! let result = prove(&seq, &SearchConfig::default());
//! assert_eq!(result.readings.len(), 1);
//! ```

pub mod commands;
pub mod contraction;
pub mod formula;
pub mod lexicon;
pub mod oracle;
pub mod prover;
pub mod semantics;
pub mod structure;
pub mod syntax;
pub mod term;
pub mod translate;
pub mod unify;

pub use contraction::{is_proof_net, ContractionGraph, Doom, Redex, Step};
pub use formula::{format_mill1, format_sequent, Atom, Formula, LambekFormula, Polarity, Sequent};
pub use lexicon::{LexEntry, Lexicon, LexiconError};
pub use oracle::{lambek_derivable, oracle_derivable, OracleAnswer, OracleBudget};
pub use prover::{compare, derivable, prove, ProofSearch, Reading, SearchConfig, SearchStatus, Verdict};
pub use semantics::{extract_term, meaning, normalize, parse_lambda, LambdaTerm};
pub use structure::{Link, NodeId, ProofStructure};
pub use syntax::{parse_lambek, parse_mill1, parse_sequent, Mill1Parser, ParseError};
pub use term::{Term, Var, VarSupply};
pub use translate::{sentence_to_sequent, translate_lambek, translate_lambek_sequent, Span};
pub use unify::{unify, unify_atoms, Substitution, UnifyError};
