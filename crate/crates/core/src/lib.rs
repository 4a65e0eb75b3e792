pub mod cli;
pub mod model;
pub mod normalize;
pub mod oracle;
pub mod reasoner;
pub mod rules;
pub mod syntax;
pub mod tableau;
pub mod turtle;
pub mod validate;
