use std::fmt;

/// Family a variable belongs to. `Z` variables are coordinates on the
/// unipotent group; the others are the derived coordinates used to write
/// down monomial bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Z,
    U,
    V,
    X,
    Y,
}

impl VarKind {
    fn symbol(self) -> char {
        match self {
            VarKind::Z => 'z',
            VarKind::U => 'u',
            VarKind::V => 'v',
            VarKind::X => 'x',
            VarKind::Y => 'y',
        }
    }
}

/// A named variable. Z-kind variables carry a (row, col) pair such as
/// `z[-2,1]`; the single-index kinds carry `row` only and `col == 0`.
///
/// Ordering is by kind, then row, then column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    kind: VarKind,
    row: i32,
    col: i32,
}

impl VarId {
    pub const fn z(row: i32, col: i32) -> Self {
        VarId { kind: VarKind::Z, row, col }
    }

    pub const fn u(index: i32) -> Self {
        VarId { kind: VarKind::U, row: index, col: 0 }
    }

    pub const fn v(index: i32) -> Self {
        VarId { kind: VarKind::V, row: index, col: 0 }
    }

    pub const fn x(index: i32) -> Self {
        VarId { kind: VarKind::X, row: index, col: 0 }
    }

    pub const fn y(index: i32) -> Self {
        VarId { kind: VarKind::Y, row: index, col: 0 }
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn row(&self) -> i32 {
        self.row
    }

    pub fn col(&self) -> i32 {
        self.col
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Z => write!(f, "z[{},{}]", self.row, self.col),
            kind => write!(f, "{}[{}]", kind.symbol(), self.row),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(VarId::z(-2, 1).to_string(), "z[-2,1]");
        assert_eq!(VarId::z(0, 1).to_string(), "z[0,1]");
        assert_eq!(VarId::u(-3).to_string(), "u[-3]");
        assert_eq!(VarId::y(-2).to_string(), "y[-2]");
    }

    #[test]
    fn order_is_kind_then_indices() {
        assert!(VarId::z(5, 5) < VarId::u(-9));
        assert!(VarId::z(-3, 1) < VarId::z(-2, -1));
        assert!(VarId::z(-2, -1) < VarId::z(-2, 1));
    }
}
