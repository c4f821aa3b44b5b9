pub mod cli;
pub mod cyclo;
pub mod grp;
pub mod linalg;
pub mod modp;
pub mod oracle;
pub mod poincare;
pub mod polyform;
pub mod sectors;
