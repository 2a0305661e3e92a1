//! Integral odd Khovanov homology anchors, including diagrams whose cubes
//! contain vanishing faces, which exercise the interleaved-chord parity
//! rule of the edge assignment.

use leokh::diagrams::braid_closure;
use leokh::homalg::{homology_at, simplify, HomCoeffs, Presentation};
use leokh::khovanov::{build, odd, CubeData};
use leokh::BigradedFreeComplex;

fn groups(c: &BigradedFreeComplex) -> Vec<(i32, i32, usize, Vec<String>)> {
    let (s, _) = simplify(c);
    let mut out = vec![];
    let (qlo, qhi) = (*s.q_range().start() - 2, *s.q_range().end());
    for q in (qlo..=qhi).filter(|q| (q - qlo) % 2 == 0) {
        for i in s.h_range() {
            let h = homology_at(&s, i, q, HomCoeffs::Z).pres;
            if let Presentation::Z(z) = h {
                if !z.is_zero() {
                    out.push((
                        i,
                        q,
                        z.free_rank(),
                        z.torsion().iter().map(|t| format!("{t}")).collect(),
                    ));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    out
}

#[test]
fn two_braid_closures_have_torsion_free_odd_homology() {
    // every 2-braid closure is a (2,k) torus knot, which is alternating,
    // so its odd homology is torsion-free; the padded words have cubes
    // with vanishing faces
    let words: Vec<Vec<i32>> = vec![
        vec![1, 1, 1, 1, 1],
        vec![-1, 1, 1, 1, 1],
        vec![1, 1, -1, -1, 1],
        vec![-1, -1, 1, -1, -1, -1, 1],
        vec![-1, 1, -1, 1, 1, -1, 1],
    ];
    let mut vanishing_seen = false;
    for w in words {
        let d = braid_closure(2, &w).unwrap();
        let cube = CubeData::new(&d);
        vanishing_seen |= odd::count_vanishing_faces(&d, &cube) > 0;
        let pkg = build(&d);
        for (i, q, _, torsion) in groups(&pkg.odd) {
            assert!(
                torsion.is_empty(),
                "odd torsion at ({i},{q}) for word {w:?}"
            );
        }
    }
    assert!(vanishing_seen);
}

#[test]
fn torus_3_4_odd_homology_has_three_torsion() {
    // the (3,4) torus knot: even homology has a single Z/2, while the odd
    // homology carries both Z/2 and Z/3 torsion
    let d = braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
    let pkg = build(&d);
    let even = groups(&pkg.even);
    assert_eq!(
        even,
        vec![
            (0, 5, 1, vec![]),
            (0, 7, 1, vec![]),
            (2, 9, 1, vec![]),
            (3, 11, 0, vec!["2".into()]),
            (3, 13, 1, vec![]),
            (4, 11, 1, vec![]),
            (4, 13, 1, vec![]),
            (5, 15, 1, vec![]),
            (5, 17, 1, vec![]),
        ]
    );
    let odd = groups(&pkg.odd);
    assert_eq!(
        odd,
        vec![
            (0, 5, 1, vec![]),
            (0, 7, 1, vec![]),
            (2, 9, 1, vec![]),
            (2, 11, 1, vec![]),
            (4, 11, 0, vec!["2".into()]),
            (4, 13, 0, vec!["2".into()]),
            (5, 13, 0, vec!["3".into()]),
            (5, 15, 1, vec!["3".into()]),
            (5, 17, 1, vec![]),
        ]
    );
}
