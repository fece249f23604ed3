//! Epistemic logic on chromatic simplicial complexes.
//!
//! Models are pure chromatic complexes whose vertices carry local atoms,
//! or multi-agent S5 Kripke models; the two are related by the `sigma` and
//! `kappa` translations. Formulas with individual, group and belief
//! modalities can be evaluated at facets, at lower-dimensional simplices,
//! and at states.
//!
//! ```
//! use chromatic::{parse, scenarios, semantics};
//!
//! let c = scenarios::paper_model("ex5.1").unwrap();
//! let x = c.resolve("a0,b1,c1").unwrap();
//! let f = parse("K[a] ~p_a").unwrap();
//! assert!(semantics::eval_simplicial(&c, semantics::Mode::Facet, &x, &f, None).unwrap());
//! ```

pub mod agents;
pub mod belief;
pub mod bisim;
pub mod complex;
pub mod distinguish;
pub mod duality;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod formula;
mod iso;
pub mod kripke;
pub mod maps;
pub mod random;
pub mod refine;
pub mod scenarios;
pub mod semantics;

pub use agents::{AgentId, AgentSet};
pub use belief::BeliefAssignment;
pub use complex::{FacetIdx, RawSimplicialModel, Simplex, SimplicialModel, VertexIdx};
pub use error::{Error, Result};
pub use formula::{parse, Formula};
pub use kripke::{KripkeModel, RawKripkeModel, StateIdx};
pub use semantics::Mode;
