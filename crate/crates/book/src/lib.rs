//! The guide under `book/`, compiled so that its samples run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/models.md")]
mod models {}
#[doc = include_str!("../../../book/src/formulas.md")]
mod formulas {}
#[doc = include_str!("../../../book/src/bisimulation.md")]
mod bisimulation {}
#[doc = include_str!("../../../book/src/groups.md")]
mod groups {}
#[doc = include_str!("../../../book/src/locality.md")]
mod locality {}
#[doc = include_str!("../../../book/src/belief.md")]
mod belief {}
#[doc = include_str!("../../../book/src/actions.md")]
mod actions {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
