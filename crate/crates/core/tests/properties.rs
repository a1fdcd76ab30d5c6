//! Module-level invariants: proptest over classical distributions plus
//! seeded campaigns over the quantum generators.

use entrobell::inequality::cerf_adami_quantum;
use entrobell::linalg::{eigh, ComplexMatrix};
use entrobell::prob::{
    joint_entropy2, markov_chain, mutual_entropy, random_markov_chain, relative_entropy,
    shannon_entropy, JointDist2, ProbDist, StochasticMatrix,
};
use entrobell::quantum::{
    partial_trace, random_density_with, random_unitary, tensor, von_neumann_entropy,
    DensityOperator,
};
use entrobell::rng::substream;
use num_complex::Complex64;
use proptest::prelude::*;

fn simplex(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6..1.0f64, n).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect()
    })
}

fn prob_dist() -> impl Strategy<Value = ProbDist> {
    (2usize..=6)
        .prop_flat_map(simplex)
        .prop_map(|v| ProbDist::new(v).unwrap())
}

/// Joint with strictly positive cells over a 2–4 × 2–4 grid.
fn positive_joint2() -> impl Strategy<Value = JointDist2> {
    ((2usize..=4), (2usize..=4))
        .prop_flat_map(|(nx, ny)| (Just((nx, ny)), simplex(nx * ny)))
        .prop_map(|((nx, ny), cells)| {
            let rows = (0..nx)
                .map(|x| cells[x * ny..(x + 1) * ny].to_vec())
                .collect();
            JointDist2::new(rows).unwrap()
        })
}

proptest! {
    #[test]
    fn shannon_entropy_is_bounded(d in prob_dist()) {
        let h = shannon_entropy(&d);
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (d.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn mutual_entropy_is_bounded_by_marginals(j in positive_joint2()) {
        let m = mutual_entropy(&j);
        let hx = shannon_entropy(&j.marginal(0).unwrap());
        let hy = shannon_entropy(&j.marginal(1).unwrap());
        prop_assert!(m >= 0.0);
        prop_assert!(m <= hx.min(hy) + 1e-9);
        // joint entropy dominates both marginal entropies
        let hxy = joint_entropy2(&j);
        prop_assert!(hxy >= hx.max(hy) - 1e-9);
    }

    #[test]
    fn relative_and_mutual_agree_on_positive_joints(j in positive_joint2()) {
        prop_assert!((relative_entropy(&j) - mutual_entropy(&j)).abs() <= 1e-10);
    }

    #[test]
    fn product_joint_factorizes(px in simplex(3), py in simplex(4)) {
        let rows = px.iter().map(|&a| py.iter().map(|&b| a * b).collect()).collect();
        let j = JointDist2::new(rows).unwrap();
        let hx = shannon_entropy(&j.marginal(0).unwrap());
        let hy = shannon_entropy(&j.marginal(1).unwrap());
        prop_assert!((hx - shannon_entropy(&ProbDist::new(px).unwrap())).abs() <= 1e-12);
        prop_assert!((hy - shannon_entropy(&ProbDist::new(py).unwrap())).abs() <= 1e-12);
        prop_assert!(relative_entropy(&j).abs() <= 1e-10);
        prop_assert!(mutual_entropy(&j).abs() <= 1e-10);
    }

    #[test]
    fn chains_satisfy_pipelining(
        px in simplex(3),
        t1 in prop::collection::vec(simplex(2), 3),
        t2 in prop::collection::vec(simplex(3), 2),
    ) {
        let j = markov_chain(
            &ProbDist::new(px).unwrap(),
            &StochasticMatrix::new(t1).unwrap(),
            &StochasticMatrix::new(t2).unwrap(),
        ).unwrap();
        let m_zy = mutual_entropy(&j.marginal_pair((1, 2)).unwrap());
        let m_zx = mutual_entropy(&j.marginal_pair((0, 2)).unwrap());
        let m_xy = mutual_entropy(&j.marginal_pair((0, 1)).unwrap());
        prop_assert!(m_zy >= m_zx - 1e-9);
        prop_assert!(m_xy >= m_zx - 1e-9);
    }
}

#[test]
fn entropy_is_invariant_under_unitary_conjugation() {
    for trial in 0..500 {
        let mut rng = substream(51, trial);
        let dim = 2 + (trial % 3) as usize;
        let rho = random_density_with(dim, &mut rng);
        let u = random_unitary(dim, &mut rng);
        let rotated = DensityOperator::new(
            u.mul(rho.matrix()).mul(&u.adjoint()),
            rho.subsystem_dims().to_vec(),
        )
        .expect("unitary conjugation preserves validity");
        let gap = (von_neumann_entropy(&rotated) - von_neumann_entropy(&rho)).abs();
        assert!(gap <= 1e-9, "trial {trial}: entropy moved by {gap:e}");
    }
}

#[test]
fn spectral_reconstruction_is_tight() {
    for trial in 0..300 {
        let mut rng = substream(52, trial);
        let dim = 2 + (trial % 7) as usize; // up to dim 8
        let rho = random_density_with(dim, &mut rng);
        let (vals, vecs) = eigh(rho.matrix()).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(dim);
        for (k, &l) in vals.iter().enumerate() {
            for i in 0..dim {
                for j in 0..dim {
                    let v = rebuilt.get(i, j) + l * vecs.get(i, k) * vecs.get(j, k).conj();
                    rebuilt.set(i, j, v);
                }
            }
        }
        let err = rebuilt.sub(rho.matrix()).max_abs();
        assert!(err <= 1e-10, "trial {trial}: reconstruction error {err:e}");
    }
}

#[test]
fn diagonal_operators_reduce_to_shannon_entropy() {
    for trial in 0..200 {
        let mut rng = substream(53, trial);
        use rand::Rng;
        let dim = rng.random_range(2..=6);
        let d = entrobell::prob::random_prob_dist(dim, &mut rng);
        let mut m = ComplexMatrix::zeros(dim);
        for (i, &p) in d.probs().iter().enumerate() {
            m.set(i, i, Complex64::new(p, 0.0));
        }
        let rho = DensityOperator::new(m, vec![dim]).unwrap();
        let gap = (von_neumann_entropy(&rho) - shannon_entropy(&d)).abs();
        assert!(gap <= 1e-12, "trial {trial}: gap {gap:e}");
    }
}

#[test]
fn partial_trace_inverts_tensor_exactly() {
    for trial in 0..200 {
        let mut rng = substream(54, trial);
        use rand::Rng;
        let da = rng.random_range(2..=3);
        let db = rng.random_range(2..=3);
        let a = random_density_with(da, &mut rng);
        let b = random_density_with(db, &mut rng);
        let ab = tensor(&a, &b);
        assert!(
            partial_trace(&ab, &[0])
                .unwrap()
                .matrix()
                .sub(a.matrix())
                .max_abs()
                <= 1e-12
        );
        assert!(
            partial_trace(&ab, &[1])
                .unwrap()
                .matrix()
                .sub(b.matrix())
                .max_abs()
                <= 1e-12
        );
    }
}

#[test]
fn separable_diagonal_states_respect_the_classical_bound() {
    for trial in 0..500 {
        let mut rng = substream(55, trial);
        use rand::Rng;
        let diag_qubit = |rng: &mut rand_chacha::ChaCha8Rng| {
            let p: f64 = rng.random();
            let mut m = ComplexMatrix::zeros(2);
            m.set(0, 0, Complex64::new(p, 0.0));
            m.set(1, 1, Complex64::new(1.0 - p, 0.0));
            DensityOperator::new(m, vec![2]).unwrap()
        };
        let rho = tensor(
            &tensor(&diag_qubit(&mut rng), &diag_qubit(&mut rng)),
            &diag_qubit(&mut rng),
        );
        let report = cerf_adami_quantum(&rho).unwrap();
        assert!(
            report.vs_classical.satisfied,
            "trial {trial}: separable diagonal state broke the classical bound \
             (lhs {})",
            report.lhs
        );
    }
}

#[test]
fn random_chain_marginals_are_consistent() {
    // marginalizing in either order agrees with direct summation
    for trial in 0..200 {
        let j = random_markov_chain(&mut substream(56, trial));
        let (nx, _, _) = j.shape();
        let via_pair = j.marginal_pair((0, 1)).unwrap().marginal(0).unwrap();
        let direct = j.marginal1(0).unwrap();
        for x in 0..nx {
            assert!((via_pair.probs()[x] - direct.probs()[x]).abs() <= 1e-12);
        }
    }
}
