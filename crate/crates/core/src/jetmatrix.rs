//! The block matrix `D_n(L)` and the Jacobian of `d_0(f), …, d_n(f)`.
//!
//! `D_n(L)` is stored upper block-triangular (block `(i, j)` is
//! `d_{j−i}(L)`), while the jet Jacobian is stored lower block-triangular
//! (block `(k, j)` is `∂d_k(f)/∂x^{(j)}`). The two agree after reversing
//! the block order on both axes of either one; see [`BlockReversal`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hasse::{hs_components, jet_partial, HsExpansion};
use crate::jacobian::{common_ring, jac, PolyMatrix};
use crate::poly::JetVariable;

/// `D_n(L)`, the `(n+1)b × (n+1)a` matrix with block `(i, j) = d_{j−i}(L)`
/// for `j ≥ i` and zero below the block diagonal.
pub fn dn_matrix(l: &PolyMatrix, n: u32) -> Result<PolyMatrix> {
    if let Some(bad) = l.entries().iter().find(|e| !e.is_base()) {
        return Err(Error::NotBasePolynomial(alloc::format!("{bad}")));
    }
    let (b, a) = (l.rows(), l.cols());
    let expansions: Vec<HsExpansion> = l.entries().iter().map(|e| hs_components(e, n)).collect::<Result<_>>()?;
    let blocks = n as usize + 1;
    let mut out = PolyMatrix::zeros(l.spec(), l.nvars(), blocks * b, blocks * a);
    for i in 0..blocks {
        for j in i..blocks {
            for r in 0..b {
                for c in 0..a {
                    let d = &expansions[r * a + c].components[j - i];
                    out.set(i * b + r, j * a + c, d.clone());
                }
            }
        }
    }
    Ok(out.with_provenance(alloc::format!("D_{n}({})", l.provenance)))
}

/// The `(n+1)r × (n+1)s` matrix whose row `k·r + l`, column `j·s + i − 1`
/// holds `∂d_k(f_l)/∂x_i^{(j)}`.
pub fn jet_jacobian(fs: &[crate::poly::Polynomial], n: u32) -> Result<PolyMatrix> {
    let (spec, s) = common_ring(fs)?;
    let r = fs.len();
    let blocks = n as usize + 1;
    let mut out = PolyMatrix::zeros(spec, s, blocks * r, blocks * s as usize);
    for (l, f) in fs.iter().enumerate() {
        let hs = hs_components(f, n)?;
        for k in 0..blocks {
            for j in 0..blocks {
                for i in 0..s {
                    let v = JetVariable::new(i + 1, j as u32);
                    out.set(k * r + l, j * s as usize + i as usize, jet_partial(&hs.components[k], v));
                }
            }
        }
    }
    Ok(out.with_provenance(alloc::format!("Jac(d_0(f),...,d_{n}(f))")))
}

/// Reversal of block order on both axes for a matrix made of
/// `(n+1) × (n+1)` blocks of size `block_rows × block_cols`. Order inside
/// each block is kept. The permutation is an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockReversal {
    pub n: u32,
    pub block_rows: usize,
    pub block_cols: usize,
}

impl BlockReversal {
    pub fn row(&self, r: usize) -> usize {
        let (blk, off) = (r / self.block_rows, r % self.block_rows);
        (self.n as usize - blk) * self.block_rows + off
    }

    pub fn col(&self, c: usize) -> usize {
        let (blk, off) = (c / self.block_cols, c % self.block_cols);
        (self.n as usize - blk) * self.block_cols + off
    }

    pub fn apply(&self, m: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(m.spec(), m.nvars(), m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(self.row(r), self.col(c), m.get(r, c).clone());
            }
        }
        out.with_provenance(alloc::format!("block-reversed {}", m.provenance))
    }

    pub fn describe(&self) -> String {
        alloc::format!(
            "reverse the {} block rows (size {}) and {} block columns (size {}) of the jet Jacobian",
            self.n + 1,
            self.block_rows,
            self.n + 1,
            self.block_cols
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdbdReport {
    pub passed: bool,
    pub n: u32,
    pub permutation: BlockReversal,
    /// First `(row, col)` of `D_n(Jac(f))` where the matrices differ.
    pub mismatch: Option<(usize, usize)>,
}

/// Compares `D_n(Jac(f))` with the block-reversed jet Jacobian entrywise.
pub fn check_fdbd(fs: &[crate::poly::Polynomial], n: u32) -> Result<FdbdReport> {
    let j = jac(fs)?;
    let dn = dn_matrix(&j, n)?;
    let jj = jet_jacobian(fs, n)?;
    let perm = BlockReversal { n, block_rows: j.rows(), block_cols: j.cols() };
    let mut mismatch = None;
    'outer: for r in 0..dn.rows() {
        for c in 0..dn.cols() {
            if dn.get(r, c) != jj.get(perm.row(r), perm.col(c)) {
                mismatch = Some((r, c));
                break 'outer;
            }
        }
    }
    Ok(FdbdReport { passed: mismatch.is_none(), n, permutation: perm, mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::jacobian::jac_m;
    use crate::poly::{parse_poly, Polynomial};
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(src: &str, s: u32) -> Polynomial {
        parse_poly(src, s, Q).unwrap()
    }

    #[test]
    fn order_zero_is_l_itself() {
        let l = jac_m(&[p("x1^3 - x2^2", 2)], 2).unwrap();
        assert_eq!(dn_matrix(&l, 0).unwrap().entries(), l.entries());
    }

    #[test]
    fn single_variable_first_order() {
        let l = PolyMatrix::from_entries(1, 1, alloc::vec![p("x1", 1)], Q).unwrap();
        let d = dn_matrix(&l, 1).unwrap();
        assert_eq!(d.entries(), &[p("x1", 1), p("x1_1", 1), p("0", 1), p("x1", 1)]);
    }

    #[test]
    fn cusp_d1_of_jac2() {
        let l = jac_m(&[p("x1^3 - x2^2", 2)], 2).unwrap();
        let d = dn_matrix(&l, 1).unwrap();
        assert_eq!((d.rows(), d.cols()), (6, 10));
        assert_eq!(d.get(0, 5), &p("6*x1*x1_1", 2));
        for r in 0..3 {
            for c in 0..5 {
                assert_eq!(d.get(r, c), l.get(r, c));
                assert_eq!(d.get(r + 3, c + 5), l.get(r, c));
                assert!(d.get(r + 3, c).is_zero());
                assert_eq!(d.get(r, c + 5), &hs_components(l.get(r, c), 1).unwrap().components[1]);
            }
        }
    }

    #[test]
    fn rejects_jet_entries() {
        let l = PolyMatrix::from_entries(1, 1, alloc::vec![p("x1_1", 1)], Q).unwrap();
        assert!(matches!(dn_matrix(&l, 1), Err(Error::NotBasePolynomial(_))));
    }

    #[test]
    fn cusp_jet_jacobian() {
        let f = p("x1^3 - x2^2", 2);
        let j0 = jet_jacobian(core::slice::from_ref(&f), 0).unwrap();
        assert_eq!(j0.entries(), jac(core::slice::from_ref(&f)).unwrap().entries());
        let j1 = jet_jacobian(core::slice::from_ref(&f), 1).unwrap();
        let expect = ["3*x1^2", "-2*x2", "0", "0", "6*x1*x1_1", "-2*x2_1", "3*x1^2", "-2*x2"];
        let expect: Vec<_> = expect.iter().map(|e| p(e, 2)).collect();
        assert_eq!(j1.entries(), &expect[..]);
    }

    #[test]
    fn fdbd_examples() {
        assert!(check_fdbd(&[p("x1^3 - x2^2", 2)], 2).unwrap().passed);
        assert!(check_fdbd(&[p("x1*x2 - 1", 2)], 3).unwrap().passed);
        assert!(check_fdbd(&[p("x1^2 + x2*x3", 3), p("x3^3 - x1", 3)], 0).unwrap().passed);
    }

    #[test]
    fn reversal_is_an_involution() {
        let perm = BlockReversal { n: 3, block_rows: 2, block_cols: 3 };
        for r in 0..8 {
            assert_eq!(perm.row(perm.row(r)), r);
        }
        for c in 0..12 {
            assert_eq!(perm.col(perm.col(c)), c);
        }
        assert_eq!(perm.row(0), 6);
        assert_eq!(perm.col(4), 7);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn dn_is_block_upper_triangular(f in crate::poly::tests::arb_poly(2, 4, Q), n in 0u32..4, m in 1u32..3) {
            let l = jac_m(core::slice::from_ref(&f), m).unwrap();
            let d = dn_matrix(&l, n).unwrap();
            let (b, a) = (l.rows(), l.cols());
            for bi in 0..=n as usize {
                for bj in 0..=n as usize {
                    for r in 0..b {
                        for c in 0..a {
                            let e = d.get(bi * b + r, bj * a + c);
                            if bj < bi {
                                prop_assert!(e.is_zero());
                            } else if bj == bi {
                                prop_assert_eq!(e, l.get(r, c));
                            }
                        }
                    }
                }
            }
        }

        #[test]
        fn fdbd_and_entry_multisets(f in crate::poly::tests::arb_poly(3, 4, Q), n in 0u32..4) {
            let fs = core::slice::from_ref(&f);
            prop_assert!(check_fdbd(fs, n).unwrap().passed);
            let mut a: Vec<String> = dn_matrix(&jac(fs).unwrap(), n).unwrap().entries().iter().map(|e| alloc::format!("{e}")).collect();
            let mut b: Vec<String> = jet_jacobian(fs, n).unwrap().entries().iter().map(|e| alloc::format!("{e}")).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}
