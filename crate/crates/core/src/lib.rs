pub mod curves;
pub mod exact;
pub mod fibration;
pub mod metaplectic;
pub mod presentation;
pub mod surface;
pub mod words;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    pub mod exact {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    pub mod presentations {}
    #[doc = include_str!("../../../book/src/twists.md")]
    pub mod twists {}
    #[doc = include_str!("../../../book/src/curves.md")]
    pub mod curves {}
    #[doc = include_str!("../../../book/src/metaplectic.md")]
    pub mod metaplectic {}
    #[doc = include_str!("../../../book/src/fibrations.md")]
    pub mod fibrations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
