//! Named example diagrams used across tests and docs.

use crate::gauss::GaussDiagram;

pub fn unknot() -> GaussDiagram {
    GaussDiagram::unknot()
}

/// The two-crossing virtual trefoil.
pub fn virtual_trefoil() -> GaussDiagram {
    GaussDiagram::parse("O1+ O2+ U1+ U2+").unwrap()
}

/// Right-handed classical trefoil (no virtual crossings).
pub fn classical_trefoil() -> GaussDiagram {
    GaussDiagram::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap()
}

/// Positive kink: a single isolated chord.
pub fn positive_kink() -> GaussDiagram {
    GaussDiagram::parse("O1+ U1+").unwrap()
}
