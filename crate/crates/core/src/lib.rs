pub mod cone;
pub mod corpus;
pub mod icp;
pub mod lattice;
pub mod search;
pub mod uhc;
