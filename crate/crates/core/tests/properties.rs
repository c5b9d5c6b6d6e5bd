use std::collections::BTreeSet;

use cellcolor::coloring::{color_closed_form, color_dual};
use cellcolor::complex::{dual_torus, skeleton, Rank};
use cellcolor::iso::complexes_isomorphic;
use cellcolor::tiling::{gen_square, gen_triangular, Chirality, TorusComplex};
use cellcolor::verify::{check_eds, verify, Level};
use cellcolor::{CellId, Lattice2D};
use proptest::prelude::*;

/// Lattices inside the kernel of the form `x + a*y (mod q)`, index at most 98.
fn kernel_lattices(q: i64, a: i64) -> impl Strategy<Value = Lattice2D> {
    (1i64..=2, 1i64..=14, 0i64..14).prop_filter_map("index too large or singular", move |(j, n2, t)| {
        let n1 = q * j;
        if n1 * n2 > 98 {
            return None;
        }
        // m + a*n2 = 0 mod q, then spread over 0..n1
        let base = (-a * n2).rem_euclid(q);
        let m = base + q * (t % j);
        Lattice2D::new((n1, 0), (m, n2)).ok()
    })
}

fn generated(l: Lattice2D, square: bool) -> Option<TorusComplex> {
    if square {
        gen_square(l).ok()
    } else {
        gen_triangular(l, Chirality::Anti).ok()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn handshake_and_euler(l in kernel_lattices(5, 2)) {
        let Some(t) = generated(l, true) else { return Ok(()) };
        let x = &t.complex;
        let s = skeleton(x);
        let degrees: usize = s.vertices.iter().map(|&v| s.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * x.edges().len());
        prop_assert_eq!(x.euler_characteristic(), 0);
        prop_assert_eq!(x.vertices().len() as u64, l.index() as u64);
    }

    #[test]
    fn triangular_handshake_and_counts(l in kernel_lattices(7, 5)) {
        let Some(t) = generated(l, false) else { return Ok(()) };
        let x = &t.complex;
        let n = l.index();
        prop_assert_eq!(x.counts(), (n, 3 * n, 2 * n));
        let degrees: usize = x.vertices().iter().map(|&v| x.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * x.edges().len());
    }

    #[test]
    fn closed_forms_are_strong_and_equidistributed(
        sq in kernel_lattices(5, 2),
        tri in kernel_lattices(7, 5),
        square in any::<bool>(),
    ) {
        let l = if square { sq } else { tri };
        let Some(t) = generated(l, square) else { return Ok(()) };
        let x = &t.complex;
        let c = color_closed_form(&t).unwrap();
        let r = verify(x, &c);
        for lv in [Level::L2ProperTotal, Level::L3Etc, Level::L4Etcc, Level::L5Setcc] {
            prop_assert!(r.level(lv).passed(), "{:?} {:?}", lv, r.level(lv));
        }
        let counts = c.color_counts(x);
        let k1 = c.k as usize + 1;
        for (rank, per) in Rank::ALL.iter().zip(counts.iter()) {
            let total = x.level(*rank).len();
            prop_assert_eq!(per.len(), k1);
            prop_assert!(per.values().all(|&n| n == total / k1));
        }
        for col in 0..=c.k {
            let class: BTreeSet<CellId> = x.vertices().iter().copied().filter(|&v| c.color(v) == col).collect();
            prop_assert!(check_eds(x, &class).passed());
        }
    }

    #[test]
    fn dual_is_an_involution(l in kernel_lattices(7, 5)) {
        let Some(t) = generated(l, false) else { return Ok(()) };
        let x = &t.complex;
        let d = dual_torus(x).unwrap();
        let dd = dual_torus(&d.complex).unwrap();
        prop_assert!(complexes_isomorphic(x, &dd.complex, 2000).unwrap());
        // transported twice, colors still follow the composed origin map
        let c = color_closed_form(&t).unwrap();
        let back = color_dual(&dd.origin, &color_dual(&d.origin, &c));
        for cell in dd.complex.cells() {
            let old = d.origin[&dd.origin[&cell.id]];
            prop_assert_eq!(x.rank_of(old), dd.complex.rank_of(cell.id));
            prop_assert_eq!(back.color(cell.id), c.color(old));
        }
        prop_assert_eq!(verify(&dd.complex, &back).summary, Some(Level::L5Setcc));
        let (v, e, f) = x.counts();
        prop_assert_eq!(d.complex.counts(), (f, e, v));
    }
}
