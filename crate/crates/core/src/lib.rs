pub mod algebra;
pub mod analysis;
pub mod halfint;
pub mod linalg;
pub mod modules;
pub mod pbw;
pub mod rat;
pub mod report;
pub mod specfile;
