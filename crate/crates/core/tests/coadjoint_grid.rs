//! End-to-end properties of the coadjoint-orbit engine over the full
//! catalog of six-dimensional orbit families of signature (4, 2):
//!
//! * synthesis followed by classification is the identity on every family
//!   across a grid of moduli and spectral data, and the functional
//!   coordinates `(M, p)` are complete — lifting them back reproduces the
//!   orbit;
//! * the orbit label is invariant under random exact equivalences (isometry
//!   plus shear);
//! * the little-cotuple recursion strips exactly one affine layer at a
//!   time, down to the zero or one-dimensional base case;
//! * over the standard presentation the shears span exactly the annihilator
//!   of the stabilizer subalgebra under the trace pairing, with all four
//!   dimension counts (15, 10, 5, 6) checked by explicit rank computations;
//! * the orbit matching is a perfect pairing between the adjoint and
//!   coadjoint family catalogs, preserving dimension, index, modulus, and
//!   the Jordan partition of canonical representatives.

use orbitforge::adjoint::{
    embed_semidirect, random_stabilizer_element, synthesize_adjoint, AdjointOrbitLabel,
};
use orbitforge::coadjoint::{
    adjoint_to_coadjoint, apply_cotuple_equivalence, classify_cotuple, coadjoint_to_adjoint,
    little_cotype, orbit_bijection, shear_map, synthesize_cotype, tuple_to_functional,
    CoadjointOrbitLabel, OrbitLabel,
};
use orbitforge::formspace::{random_isometry, signature_index, standard_k, FormSpace};
use orbitforge::typeclass::{jordan_chevalley, nilpotent_block_structure};
use orbitforge::Matrix;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The fourteen families: a format pattern with `{mu}` and `{q}` slots for
/// the modulus squared and the spectral datum.
const FAMILIES: [&str; 14] = [
    "N-_5(0), mu2={mu} + D-_0(0)",
    "N_4(0,0) + D-_0(IP b={q})",
    "N_4(0,0) + D-_0(0) + D-_0(0)",
    "N-_3(0), mu2={mu} + D+_2(0)",
    "N-_3(0), mu2={mu} + D-_0(IP b={q}) + D+_0(0)",
    "N-_3(0), mu2={mu} + D_0(RP a={q}) + D-_0(0)",
    "N-_3(0), mu2={mu} + D-_0(0) + D-_0(0) + D+_0(0)",
    "N+_3(0), mu2={mu} + D-_0(IP b={q}) + D-_0(0)",
    "N+_3(0), mu2={mu} + D-_0(0) + D-_0(0) + D-_0(0)",
    "N_2(0,0) + D+_2(0) + D-_0(0)",
    "N_2(0,0) + D-_0(IP b={q}) + D_0(RP a={q})",
    "N_2(0,0) + D-_0(IP b={q}) + D-_0(0) + D+_0(0)",
    "N_2(0,0) + D_0(RP a={q}) + D-_0(0) + D-_0(0)",
    "N_2(0,0) + D-_0(0) + D-_0(0) + D-_0(0) + D+_0(0)",
];

/// Adjoint partners of the fourteen families above, row by row.
const ADJOINT_PARTNERS: [&str; 14] = [
    "u{D-_4(0), mu2={mu}} + D-_0(0)",
    "u{D_1(0,0)} + D-_0(IP b={q})",
    "u{D_1(0,0)} + D-_0(0) + D-_0(0)",
    "u{D+_2(0), mu2={mu}} + D+_2(0)",
    "u{D+_2(0), mu2={mu}} + D-_0(IP b={q}) + D+_0(0)",
    "u{D+_2(0), mu2={mu}} + D_0(RP a={q}) + D-_0(0)",
    "u{D+_2(0), mu2={mu}} + D-_0(0) + D-_0(0) + D+_0(0)",
    "u{D-_2(0), mu2={mu}} + D-_0(IP b={q}) + D-_0(0)",
    "u{D-_2(0), mu2={mu}} + D-_0(0) + D-_0(0) + D-_0(0)",
    "u{D+_0(0)+D-_0(0)} + D+_2(0) + D-_0(0)",
    "u{D+_0(0)+D-_0(0)} + D-_0(IP b={q}) + D_0(RP a={q})",
    "u{D+_0(0)+D-_0(0)} + D-_0(IP b={q}) + D-_0(0) + D+_0(0)",
    "u{D+_0(0)+D-_0(0)} + D_0(RP a={q}) + D-_0(0) + D-_0(0)",
    "u{D+_0(0)+D-_0(0)} + D-_0(0) + D-_0(0) + D-_0(0) + D+_0(0)",
];

const MODULI: [&str; 4] = ["1", "1/4", "9/4", "2"];
const DATA: [&str; 3] = ["1", "2", "1/4"];

/// Every concrete label instance in the grid.
fn grid_labels() -> Vec<CoadjointOrbitLabel> {
    let mut out = Vec::new();
    for pattern in FAMILIES {
        let mus: &[&str] = if pattern.contains("{mu}") {
            &MODULI
        } else {
            &[""]
        };
        let qs: &[&str] = if pattern.contains("{q}") { &DATA } else { &[""] };
        for mu in mus {
            for q in qs {
                let text = pattern.replace("{mu}", mu).replace("{q}", q);
                let label: CoadjointOrbitLabel = text.parse().unwrap_or_else(|e| {
                    panic!("grid label {text:?} failed to parse: {e}");
                });
                out.push(label);
            }
        }
    }
    out
}

fn lorentz_g() -> Matrix {
    Matrix::from_int_rows(&[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]])
}

fn poincare_k() -> Matrix {
    standard_k(&lorentz_g())
}

/// A small deterministic integer vector for shear trials.
fn trial_vector(dim: usize, seed: usize) -> Matrix {
    Matrix::from_fn(dim, 1, |i, _| {
        orbitforge::ExactScalar::from_int(((seed * 31 + i * 7) % 11) as i64 - 5)
    })
}

#[test]
fn synthesis_then_classification_is_identity_on_the_grid() {
    let labels = grid_labels();
    assert_eq!(labels.len(), 67, "grid size is frozen");
    let k = poincare_k();
    let g = lorentz_g();
    for label in &labels {
        let t = synthesize_cotype(label).unwrap_or_else(|e| {
            panic!("synthesis failed for {label}: {e}");
        });
        // Every family in the catalog lives on the standard (4, 2) space
        // with the marked vector pinned to the last basis vector.
        assert_eq!(t.space.gram, k, "{label}");
        assert_eq!(t.v, Matrix::basis_vector(6, 5), "{label}");
        let back = classify_cotuple(&t).unwrap();
        assert_eq!(back, *label);
        let sig = signature_index(&t.space).unwrap();
        assert_eq!((sig.negatives, sig.positives), (4, 2));
        let (dim, index) = label.dim_index().unwrap();
        assert_eq!((dim, index), (6, 4), "{label}");

        // The functional coordinates (M, p) are a complete invariant:
        // dropping the remaining blocks of the operator is a shear, so the
        // lifted tuple still classifies to the same label.
        let f = tuple_to_functional(&t).unwrap();
        assert_eq!(f.little_gram, g, "{label}");
        let lifted = f.to_tuple().unwrap();
        assert_eq!(classify_cotuple(&lifted).unwrap(), *label, "{label}");
    }
}

#[test]
fn labels_are_invariant_under_random_equivalences() {
    // One representative instance per family keeps the trial count at
    // 15 × 14 = 210 classifications while touching every cotype case and an
    // irrational modulus.
    let mut instances: Vec<CoadjointOrbitLabel> = Vec::new();
    for pattern in FAMILIES {
        let text = pattern.replace("{mu}", "9/4").replace("{q}", "1");
        instances.push(text.parse().unwrap());
    }
    instances.push("N-_5(0), mu2=2 + D-_0(0)".parse().unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(20260813);
    let mut trials = 0usize;
    for label in &instances {
        let t = synthesize_cotype(label).unwrap();
        for k in 0..14 {
            // Alternate general isometries (which move v) with stabilizer
            // elements (which fix it); always add a shear on top.
            let (p, fixes_v) = if k % 2 == 0 {
                (random_isometry(&t.space, &mut rng), false)
            } else {
                (
                    random_stabilizer_element(&t.space.gram, 1000 + k as u64),
                    true,
                )
            };
            let w = trial_vector(6, trials);
            let moved = apply_cotuple_equivalence(&t, &p, &w).unwrap();
            if fixes_v {
                assert_eq!(moved.v, t.v);
            }
            assert_eq!(
                classify_cotuple(&moved).unwrap(),
                *label,
                "equivalence changed the label of {label}"
            );
            trials += 1;
        }
    }
    assert!(trials >= 200, "ran {trials} trials");
    assert!(instances.len() >= 10);
}

#[test]
fn little_cotuple_recursion_strips_one_layer_at_a_time() {
    // Odd marked summands step down n → n−2 with sign and modulus intact,
    // terminating in the one-dimensional cotype.
    for (n, eps) in [(5usize, '-'), (5, '+'), (7, '-'), (9, '-')] {
        let text = format!("N{eps}_{n}(0), mu2=9/4");
        let label: CoadjointOrbitLabel = text.parse().unwrap();
        let t = synthesize_cotype(&label).unwrap();
        let little = little_cotype(&t).unwrap();
        let expect = format!("N{eps}_{}(0), mu2=9/4", n - 2);
        assert_eq!(classify_cotuple(&little).unwrap().to_string(), expect);
    }
    let t = synthesize_cotype(&"N-_3(0), mu2=9/4".parse().unwrap()).unwrap();
    assert_eq!(
        classify_cotuple(&little_cotype(&t).unwrap())
            .unwrap()
            .to_string(),
        "1dim-, a2=9/4"
    );
    // An irrational modulus survives a recursion step exactly.
    let t = synthesize_cotype(&"N+_5(0), mu2=2".parse().unwrap()).unwrap();
    assert_eq!(
        classify_cotuple(&little_cotype(&t).unwrap())
            .unwrap()
            .to_string(),
        "N+_3(0), mu2=2"
    );

    // Even marked summands step down the same way, terminating in the zero
    // cotype on the zero-dimensional space.
    for n in [4usize, 6, 8] {
        let text = format!("N_{n}(0,0)");
        let label: CoadjointOrbitLabel = text.parse().unwrap();
        let t = synthesize_cotype(&label).unwrap();
        let little = little_cotype(&t).unwrap();
        let expect = format!("N_{}(0,0)", n - 2);
        assert_eq!(classify_cotuple(&little).unwrap().to_string(), expect);
    }
    let t = synthesize_cotype(&"N_2(0,0)".parse().unwrap()).unwrap();
    let little = little_cotype(&t).unwrap();
    assert_eq!(little.space.dim, 0);
    assert_eq!(classify_cotuple(&little).unwrap().to_string(), "zero");

    // The complement types ride along unchanged through a recursion step.
    let t = synthesize_cotype(&"N-_5(0), mu2=1/4 + D-_0(0)".parse().unwrap()).unwrap();
    assert_eq!(
        classify_cotuple(&little_cotype(&t).unwrap())
            .unwrap()
            .to_string(),
        "N-_3(0), mu2=1/4 + D-_0(0)"
    );
}

/// Flatten a square matrix into a column vector, row-major.
fn flatten(m: &Matrix) -> Matrix {
    let d = m.rows();
    Matrix::from_fn(d * d, 1, |k, _| m.at(k / d, k % d).clone())
}

/// The linear operator on row-major-flattened matrices whose kernel is the
/// orthogonal Lie algebra of `gram`: `vec(Y) ↦ vec(YᵀK + KY)`.
fn algebra_constraint_operator(gram: &Matrix) -> Matrix {
    let d = gram.rows();
    Matrix::from_fn(d * d, d * d, |row, col| {
        let (r, s) = (row / d, row % d);
        let (i, j) = (col / d, col % d);
        let mut entry = orbitforge::ExactScalar::zero();
        if j == r {
            entry = &entry + gram.at(i, s);
        }
        if j == s {
            entry = &entry + gram.at(r, i);
        }
        entry
    })
}

#[test]
fn shears_span_the_stabilizer_annihilator() {
    let g = lorentz_g();
    let k6 = poincare_k();
    let space = FormSpace::new(k6.clone());

    // Dimension counts from first principles: the orthogonal algebra of a
    // six-dimensional form has dimension 15, of a four-dimensional one 6.
    let big_constraint = algebra_constraint_operator(&k6);
    let big_basis = big_constraint.nullspace();
    assert_eq!(big_basis.cols(), 15);
    assert_eq!(algebra_constraint_operator(&g).nullspace().cols(), 6);

    // The stabilizer subalgebra of the marked vector: 6 rotational
    // generators and 4 translational ones, embedded as block matrices.
    let g_inv = g.inverse().unwrap();
    let mut stabilizer: Vec<Matrix> = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut skew = Matrix::zeros(4, 4);
            skew.set(i, j, orbitforge::ExactScalar::one());
            skew.set(j, i, orbitforge::ExactScalar::from_int(-1));
            let x = g_inv.matmul(&skew);
            stabilizer.push(embed_semidirect(&g, &x, &Matrix::zeros(4, 1)).unwrap().y);
        }
    }
    for b in 0..4 {
        let ztil = Matrix::basis_vector(4, b);
        stabilizer.push(embed_semidirect(&g, &Matrix::zeros(4, 4), &ztil).unwrap().y);
    }
    assert_eq!(stabilizer.len(), 10);
    // The embedded generators are linearly independent algebra elements.
    let stab_cols: Vec<Matrix> = stabilizer.iter().map(flatten).collect();
    let stab_refs: Vec<&Matrix> = stab_cols.iter().collect();
    let stab_mat = Matrix::hstack(&stab_refs);
    assert_eq!(stab_mat.rank(), 10);
    for z in &stabilizer {
        assert!(big_constraint.matmul(&flatten(z)).is_zero_matrix());
    }

    // The restriction map Y ↦ (tr(Y·Z_a))_a from the 15-dimensional algebra
    // to the 10-dimensional dual of the stabilizer subalgebra, expressed in
    // the nullspace basis.  It is onto, so its kernel has dimension 5.
    let restriction = Matrix::from_fn(10, 15, |a, b| {
        let d = 6;
        let y = Matrix::from_fn(d, d, |r, s| big_basis.at(r * d + s, b).clone());
        y.matmul(&stabilizer[a]).trace()
    });
    assert_eq!(restriction.rank(), 10);

    // The shears against the marked vector: L_{e_i, e₅} for i < 5 are five
    // independent algebra elements, L_{e₅, e₅} = 0, and every one of them
    // is annihilated by the restriction map.  Containment plus the
    // dimension count 15 − 10 = 5 gives span equality.
    let e5 = Matrix::basis_vector(6, 5);
    let mut shear_cols: Vec<Matrix> = Vec::new();
    for i in 0..6 {
        let l = shear_map(&Matrix::basis_vector(6, i), &e5, &space).unwrap();
        if i == 5 {
            assert!(l.is_zero_matrix());
            continue;
        }
        assert!(big_constraint.matmul(&flatten(&l)).is_zero_matrix());
        for z in &stabilizer {
            assert!(l.matmul(z).trace().is_zero());
        }
        shear_cols.push(flatten(&l));
    }
    let shear_refs: Vec<&Matrix> = shear_cols.iter().collect();
    assert_eq!(Matrix::hstack(&shear_refs).rank(), 5);

    // The annihilator is allowed to meet the subalgebra it annihilates, and
    // here it does: the four translation generators are themselves shears
    // (the trace form is degenerate on the translation ideal), so shears
    // and stabilizer together span 5 + 10 − 4 = 11 dimensions.
    let mut trans_refs: Vec<&Matrix> = shear_cols.iter().collect();
    trans_refs.extend(stab_cols.iter().skip(6));
    assert_eq!(Matrix::hstack(&trans_refs).rank(), 5);
    let mut all_refs: Vec<&Matrix> = Vec::new();
    all_refs.extend(shear_cols.iter());
    all_refs.extend(stab_cols.iter());
    assert_eq!(Matrix::hstack(&all_refs).rank(), 11);
}

#[test]
fn orbit_matching_is_a_perfect_pairing_of_the_catalogs() {
    let k = poincare_k();
    for (row, (co_pat, ad_pat)) in FAMILIES.iter().zip(ADJOINT_PARTNERS.iter()).enumerate() {
        for (mu, q) in [("9/4", "1"), ("2", "1/4")] {
            let co_text = co_pat.replace("{mu}", mu).replace("{q}", q);
            let ad_text = ad_pat.replace("{mu}", mu).replace("{q}", q);
            let c: CoadjointOrbitLabel = co_text.parse().unwrap();
            let a: AdjointOrbitLabel = ad_text.parse().unwrap();

            // The matching is a bijection pairing the rows of the two
            // catalogs, in both directions.
            assert_eq!(adjoint_to_coadjoint(&a).unwrap(), c, "row {row}");
            assert_eq!(coadjoint_to_adjoint(&c).unwrap(), a, "row {row}");
            let forward = orbit_bijection(&OrbitLabel::Adjoint(a.clone())).unwrap();
            assert_eq!(forward, OrbitLabel::Coadjoint(c.clone()));
            assert_eq!(
                orbit_bijection(&forward).unwrap(),
                OrbitLabel::Adjoint(a.clone())
            );

            // Dimension and index agree on both sides.
            assert_eq!(a.dim_index().unwrap(), (6, 4));
            assert_eq!(c.dim_index().unwrap(), (6, 4));

            // Canonical representatives agree in signature and in the
            // Jordan partition of the nilpotent part of the operator.
            let ta = synthesize_adjoint(&a).unwrap();
            let tc = synthesize_cotype(&c).unwrap();
            assert_eq!(ta.space.gram, k);
            assert_eq!(tc.space.gram, k);
            let (_, na) = jordan_chevalley(&ta.y).unwrap();
            let (_, nc) = jordan_chevalley(&tc.y).unwrap();
            let mut pa = nilpotent_block_structure(&na, &ta.space).unwrap();
            let mut pc = nilpotent_block_structure(&nc, &tc.space).unwrap();
            pa.sort_unstable();
            pc.sort_unstable();
            assert_eq!(pa, pc, "row {row}: Jordan partitions differ");
        }
    }

    // Distinct rows pair with distinct rows: the matching is injective on
    // the family catalog.
    let mut images: Vec<String> = FAMILIES
        .iter()
        .map(|pat| {
            let c: CoadjointOrbitLabel = pat
                .replace("{mu}", "1")
                .replace("{q}", "1")
                .parse()
                .unwrap();
            coadjoint_to_adjoint(&c).unwrap().to_string()
        })
        .collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 14);
}
