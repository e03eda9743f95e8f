//! The wreath-product algebra `H_{1,k,c}(Γ_N)` and its induced modules.

pub mod continuation;
pub mod deform;
pub mod element;
pub mod hyperplane;
pub mod induced;
pub mod relations;
pub mod specht;
pub mod trace;

pub use deform::{first_order_deformation, FirstOrderDeformation};
pub use element::{ReflectionKind, WreathElement};
pub use hyperplane::{hyperplane, intersect_hyperplanes, Hyperplane};
pub use induced::{build_induced, build_unchecked, InducedModule};
pub use relations::{check_r1_r2, DeformationParameter};
