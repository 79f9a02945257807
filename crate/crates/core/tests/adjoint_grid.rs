//! End-to-end properties of the adjoint-orbit engine over the full catalog
//! of six-dimensional orbit families of signature (4, 2):
//!
//! * synthesis followed by classification is the identity on every family
//!   across a grid of moduli and spectral data;
//! * the orbit label is invariant under random exact isometries (both
//!   general ones moving the marked vector and stabilizer ones fixing it);
//! * splitting off the distinguished summand preserves the height and the
//!   parameter, and the complement carries exactly the rest types;
//! * the distinguished Gram determinant equals ± the product of its
//!   antidiagonal entries, exactly.

use orbitforge::adjoint::{
    classify_adjoint, distinguished_height, parameter_of, random_stabilizer_element,
    split_distinguished, synthesize_adjoint, AdjointOrbitLabel, AdjointTriple,
};
use orbitforge::formspace::{random_isometry, signature_index, standard_k};
use orbitforge::typeclass::classify_pair;
use orbitforge::{ExactScalar, Matrix};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The fourteen families: a format pattern with `{mu}` and `{q}` slots for
/// the modulus squared and the spectral datum.
const FAMILIES: [&str; 14] = [
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
fn grid_labels() -> Vec<AdjointOrbitLabel> {
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
                let label: AdjointOrbitLabel = text.parse().unwrap_or_else(|e| {
                    panic!("grid label {text:?} failed to parse: {e}");
                });
                out.push(label);
            }
        }
    }
    out
}

fn poincare_k() -> Matrix {
    standard_k(&Matrix::from_int_rows(&[
        &[-1, 0, 0, 0],
        &[0, -1, 0, 0],
        &[0, 0, -1, 0],
        &[0, 0, 0, 1],
    ]))
}

#[test]
fn synthesis_then_classification_is_identity_on_the_grid() {
    let labels = grid_labels();
    assert_eq!(labels.len(), 67, "grid size is frozen");
    let k = poincare_k();
    for label in &labels {
        let t = synthesize_adjoint(label).unwrap_or_else(|e| {
            panic!("synthesis failed for {label}: {e}");
        });
        // Every family in the catalog lives on the standard (4, 2) space
        // with the marked vector pinned to the last basis vector.
        assert_eq!(t.space.gram, k, "{label}");
        assert_eq!(t.v0, Matrix::basis_vector(6, 5), "{label}");
        let back = classify_adjoint(&t).unwrap();
        assert_eq!(back, *label);
        let sig = signature_index(&t.space).unwrap();
        assert_eq!((sig.negatives, sig.positives), (4, 2));
        let (dim, index) = label.dim_index().unwrap();
        assert_eq!((dim, index), (6, 4), "{label}");
    }
}

#[test]
fn labels_are_invariant_under_random_isometries() {
    // One representative instance per family keeps the trial count at
    // 14 × 15 = 210 classifications while touching every distinguished
    // case, both spectral classes, and an irrational modulus.
    let mut instances: Vec<AdjointOrbitLabel> = Vec::new();
    for pattern in FAMILIES {
        let text = pattern.replace("{mu}", "9/4").replace("{q}", "1");
        instances.push(text.parse().unwrap());
    }
    instances.push("u{D-_4(0), mu2=2} + D-_0(0)".parse().unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(20260813);
    let mut trials = 0usize;
    for label in &instances {
        let t = synthesize_adjoint(label).unwrap();
        for k in 0..14 {
            // Alternate general isometries (which move v°) with stabilizer
            // elements (which fix it).
            let (p, fixes_v0) = if k % 2 == 0 {
                (random_isometry(&t.space, &mut rng), false)
            } else {
                (random_stabilizer_element(&t.space.gram, 1000 + k as u64), true)
            };
            let p_inv = p.inverse().unwrap();
            let moved = AdjointTriple {
                space: t.space.clone(),
                y: p.matmul(&t.y).matmul(&p_inv),
                v0: p.matmul(&t.v0),
            };
            if fixes_v0 {
                assert_eq!(moved.v0, t.v0);
            }
            assert_eq!(
                classify_adjoint(&moved).unwrap(),
                *label,
                "conjugation by an isometry changed the label of {label}"
            );
            trials += 1;
        }
    }
    assert!(trials >= 200, "ran {trials} trials");
    assert!(instances.len() >= 10);
}

#[test]
fn splitting_preserves_invariants_and_complement_types() {
    // One instance per family (modulus 1/4, datum 2).
    for pattern in FAMILIES {
        let text = pattern.replace("{mu}", "1/4").replace("{q}", "2");
        let label: AdjointOrbitLabel = text.parse().unwrap();
        let t = synthesize_adjoint(&label).unwrap();
        let h = distinguished_height(&t).unwrap();
        let p = parameter_of(&t).unwrap();
        let (wtilde, comp) = split_distinguished(&t).unwrap();
        assert_eq!(wtilde.cols() + comp.cols(), 6);

        // Restriction to the distinguished summand: same height, same
        // parameter (the splitting theorem, checked exactly).
        let sub = AdjointTriple {
            space: t.space.restrict(&wtilde),
            y: wtilde.solve(&t.y.matmul(&wtilde)).unwrap(),
            v0: wtilde.solve(&t.v0).unwrap(),
        };
        assert_eq!(distinguished_height(&sub).unwrap(), h, "{label}");
        assert_eq!(parameter_of(&sub).unwrap(), p, "{label}");

        // The complement carries exactly the rest types.
        if comp.cols() > 0 {
            let comp_space = t.space.restrict(&comp);
            let comp_y = comp.solve(&t.y.matmul(&comp)).unwrap();
            let types = classify_pair(&comp_y, &comp_space).unwrap();
            assert_eq!(types, label.rest, "{label}");
        } else {
            assert!(label.rest.is_empty());
        }
    }
}

#[test]
fn distinguished_gram_determinant_is_antidiagonal_product() {
    let mut checked = 0usize;
    for pattern in FAMILIES {
        for mu in ["1", "9/4"] {
            let text = pattern.replace("{mu}", mu).replace("{q}", "1");
            let label: AdjointOrbitLabel = text.parse().unwrap();
            let t = synthesize_adjoint(&label).unwrap();
            let (wtilde, _) = split_distinguished(&t).unwrap();
            let gram = wtilde.transpose().matmul(&t.space.gram.matmul(&wtilde));
            let n = gram.rows();
            let mut prod = ExactScalar::one();
            for i in 0..n {
                prod = &prod * gram.at(i, n - 1 - i);
            }
            assert!(!prod.is_zero(), "{label}: antidiagonal entry vanished");
            let det = gram.det();
            assert!(
                det == prod || det == -&prod,
                "{label}: det {det} is not ± the antidiagonal product {prod}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 14);
}

#[test]
fn moved_triples_split_as_well() {
    // The split works on presentations that are not synthesis output: move
    // a few triples by a random isometry first, then split and re-check the
    // certificate.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for text in [
        "u{D-_4(0), mu2=1} + D-_0(0)",
        "u{D_1(0,0)} + D-_0(0) + D-_0(0)",
        "u{D+_0(0)+D-_0(0)} + D+_2(0) + D-_0(0)",
        "u{D-_2(0), mu2=2} + D-_0(0) + D-_0(0) + D-_0(0)",
    ] {
        let label: AdjointOrbitLabel = text.parse().unwrap();
        let t = synthesize_adjoint(&label).unwrap();
        for _ in 0..3 {
            let p = random_isometry(&t.space, &mut rng);
            let moved = AdjointTriple {
                space: t.space.clone(),
                y: p.matmul(&t.y).matmul(&p.inverse().unwrap()),
                v0: p.matmul(&t.v0),
            };
            let (wtilde, comp) = split_distinguished(&moved).unwrap();
            assert_eq!(wtilde.cols(), label.distinguished.dim());
            assert_eq!(comp.cols(), 6 - label.distinguished.dim());
            assert!(wtilde.image_contains(&moved.v0));
        }
    }
}
