//! Definite quaternion algebras over Q, maximal orders, right ideal classes
//! and Brandt matrices.

pub mod lattice;
pub mod algebra;
pub mod order;
pub mod ideal;
pub mod classes;
pub mod brandt;
