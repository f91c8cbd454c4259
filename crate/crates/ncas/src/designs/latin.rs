use std::fmt;

use crate::error::DesignError;
use crate::matrixkit::ZeroOneMatrix;

/// Symbol of the Latin square: a field element (by canonical index) or the indeterminate `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatinSymbol {
    Field(u32),
    Indeterminate,
}

impl fmt::Display for LatinSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinSymbol::Field(a) => write!(f, "{a}"),
            LatinSymbol::Indeterminate => write!(f, "x"),
        }
    }
}

/// Square of order `v` over `{0, .., v-2} ∪ {x}`, rows and columns indexed the same way
/// with `x` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<LatinSymbol>,
}

impl LatinSquare {
    pub fn from_cells(order: usize, cells: Vec<LatinSymbol>) -> Result<Self, DesignError> {
        if cells.len() != order * order {
            return Err(DesignError::ShapeMismatch(format!("{} cells for order {order}", cells.len())));
        }
        Ok(LatinSquare { order, cells })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> LatinSymbol {
        self.cells[r * self.order + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: LatinSymbol) {
        self.cells[r * self.order + c] = s;
    }

    /// All symbols, field elements first and the indeterminate last.
    pub fn symbols(&self) -> Vec<LatinSymbol> {
        let mut s: Vec<LatinSymbol> = (0..self.order as u32 - 1).map(LatinSymbol::Field).collect();
        s.push(LatinSymbol::Indeterminate);
        s
    }

    /// Permutation matrix `P_a` of the cells holding symbol `a`.
    pub fn symbol_matrix(&self, a: LatinSymbol) -> ZeroOneMatrix {
        ZeroOneMatrix::from_fn(self.order, self.order, |r, c| self.get(r, c) == a)
    }
}

/// Symmetric Latin square with constant diagonal `x` from the circle method.
///
/// With `q = v - 1`, round `r` pairs `r` with `x` and `r + i` with `r - i` (mod `q`);
/// the cell of every pair in round `r` holds symbol `r`.
pub fn latin_build(v: usize) -> Result<LatinSquare, DesignError> {
    if v % 2 == 1 {
        return Err(DesignError::OddOrder(v));
    }
    if v < 2 {
        return Err(DesignError::OrderTooSmall(v));
    }
    let q = v - 1;
    // 2 is invertible mod the odd number q
    let inv2 = q.div_ceil(2);
    let mut cells = vec![LatinSymbol::Indeterminate; v * v];
    for a in 0..v {
        for b in 0..v {
            if a == b {
                continue;
            }
            let round = if a == q {
                b
            } else if b == q {
                a
            } else {
                (a + b) * inv2 % q
            };
            cells[a * v + b] = LatinSymbol::Field(round as u32);
        }
    }
    Ok(LatinSquare { order: v, cells })
}

/// Checks the Latin property, symmetry and the constant diagonal `x`.
pub fn verify_latin(l: &LatinSquare) -> Result<(), DesignError> {
    let v = l.order;
    let idx = |s: LatinSymbol| match s {
        LatinSymbol::Field(a) if (a as usize) < v - 1 => Some(a as usize),
        LatinSymbol::Indeterminate => Some(v - 1),
        _ => None,
    };
    for (line, get) in [
        ("row", &(|i: usize, j: usize| l.get(i, j)) as &dyn Fn(usize, usize) -> LatinSymbol),
        ("column", &|i: usize, j: usize| l.get(j, i)),
    ] {
        for i in 0..v {
            let mut seen = vec![false; v];
            for j in 0..v {
                let s = get(i, j);
                match idx(s) {
                    Some(k) if !seen[k] => seen[k] = true,
                    _ => return Err(DesignError::NotLatin { line, index: i, symbol: s.to_string() }),
                }
            }
        }
    }
    for r in 0..v {
        for c in r + 1..v {
            if l.get(r, c) != l.get(c, r) {
                return Err(DesignError::NotSymmetric { row: r, col: c });
            }
        }
    }
    if let Some(i) = (0..v).find(|&i| l.get(i, i) != LatinSymbol::Indeterminate) {
        return Err(DesignError::DiagonalNotConstant { index: i, found: l.get(i, i).to_string() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_four() {
        let l = latin_build(4).unwrap();
        verify_latin(&l).unwrap();
        let x = LatinSymbol::Indeterminate;
        for a in 0..4 {
            assert_eq!(l.get(a, a), x);
        }
        assert_eq!(latin_build(5), Err(DesignError::OddOrder(5)));
    }

    #[test]
    fn factors_are_symmetric_involutions() {
        for v in [4usize, 6, 8, 10, 14] {
            let l = latin_build(v).unwrap();
            verify_latin(&l).unwrap();
            let mut sum = ZeroOneMatrix::zeros(v, v);
            for s in l.symbols() {
                let p = l.symbol_matrix(s);
                assert!(p.is_symmetric());
                assert_eq!(p.mul(&p).unwrap(), ZeroOneMatrix::identity(v).to_int());
                sum = sum.checked_add(&p).unwrap();
            }
            assert_eq!(sum, ZeroOneMatrix::ones(v, v));
        }
    }

    #[test]
    fn mutation_detected() {
        let mut l = latin_build(6).unwrap();
        l.set(1, 3, LatinSymbol::Field(0));
        match verify_latin(&l) {
            Err(DesignError::NotLatin { line: "row", index: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
