use metabelian::{zoo, Depth, Endomorphism, GroupContext, LaurentPoly, MagnusElement};
use proptest::prelude::*;

const N: usize = 4;

fn ctx() -> GroupContext {
    GroupContext::new(N).unwrap()
}

/// Letters `±k` stand for `x_k^{±1}`.
fn letters(max: usize) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(
        (1i8..=N as i8, any::<bool>()).prop_map(|(k, s)| if s { k } else { -k }),
        0..=max,
    )
}

fn eval(w: &[i8]) -> MagnusElement {
    let c = ctx();
    w.iter().fold(c.one(), |acc, &l| {
        let x = c.generator(l.unsigned_abs() as usize).unwrap();
        if l > 0 {
            &acc * &x
        } else {
            &acc * &x.inverse()
        }
    })
}

fn free_reduce(w: &[i8]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn comm3(a: &MagnusElement, b: &MagnusElement, c: &MagnusElement) -> MagnusElement {
    a.commutator(b).commutator(c)
}

fn zoo_ia(k: usize) -> Endomorphism {
    let c = ctx();
    let pool = [
        zoo::pi(c, 1, 2).unwrap(),
        zoo::pi(c, 3, 1).unwrap(),
        zoo::tau_seq(c, 2, &[3, 4]).unwrap(),
        zoo::inner(&c.generator(4).unwrap()),
        zoo::mu(c).unwrap(),
        zoo::b_q(c, 1, 2, &LaurentPoly::one(N)).unwrap(),
    ];
    pool[k % pool.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_reduction_preserves_elements(w in letters(8), cut in 0usize..9, k in 1i8..=N as i8) {
        let cut = cut.min(w.len());
        let mut padded = w[..cut].to_vec();
        padded.extend([k, -k]);
        padded.extend_from_slice(&w[cut..]);
        prop_assert_eq!(eval(&padded), eval(&w));
        prop_assert_eq!(eval(&free_reduce(&w)), eval(&w));
    }

    #[test]
    fn fundamental_identity_everywhere(u in letters(8), v in letters(8)) {
        let (a, b) = (eval(&u), eval(&v));
        for w in [&a * &b, a.inverse(), a.commutator(&b), a.pow(3)] {
            prop_assert!(w.satisfies_identity());
        }
    }

    #[test]
    fn metabelian_laws(u in letters(5), v in letters(5), w in letters(5), z in letters(5)) {
        let (u, v, w, z) = (eval(&u), eval(&v), eval(&w), eval(&z));
        let cyclic = &(&comm3(&u, &v, &w) * &comm3(&v, &w, &u)) * &comm3(&w, &u, &v);
        prop_assert!(cyclic.is_one());
        prop_assert!(u.commutator(&v).commutator(&w.commutator(&z)).is_one());
        let lhs = (&u * &u.commutator(&w)).commutator(&(&v * &v.commutator(&w)));
        prop_assert_eq!(lhs, &u.commutator(&v) * &comm3(&u, &v, &w));
    }

    #[test]
    fn depth_is_subadditive(u in letters(6), v in letters(6), m in 0usize..3) {
        let mut a = eval(&u);
        for _ in 0..m {
            a = a.commutator(&eval(&v));
        }
        let b = eval(&v);
        let prod = (&a * &b).gamma_depth();
        prop_assert!(prod >= a.gamma_depth().min(b.gamma_depth()));
        let (da, db) = (a.gamma_depth(), b.gamma_depth());
        let c = a.commutator(&b).gamma_depth();
        if let (Depth::Finite(x), Depth::Finite(y)) = (da, db) {
            prop_assert!(c.at_least(x + y));
        }
    }

    #[test]
    fn jacobian_rows_telescope(k in 0usize..6, j in 0usize..6) {
        let phi = zoo_ia(k).compose(&zoo_ia(j)).unwrap();
        for i in 1..=N {
            let mut acc = LaurentPoly::zero(N);
            for col in 1..=N {
                acc = &acc + &(phi.jacobian().get(i - 1, col - 1) * &LaurentPoly::var_minus_one(N, col));
            }
            prop_assert_eq!(acc, LaurentPoly::var_minus_one(N, i));
        }
    }

    #[test]
    fn determinant_is_multiplicative(k in 0usize..6, j in 0usize..6) {
        let (phi, psi) = (zoo_ia(k), zoo_ia(j));
        let both = phi.compose(&psi).unwrap();
        prop_assert_eq!(both.det(), &psi.det() * &phi.det());
    }

    #[test]
    fn inner_depth_law(u in letters(5), v in letters(4), m in 0usize..3) {
        let mut w = eval(&u);
        for _ in 0..m {
            w = w.commutator(&eval(&v));
        }
        prop_assume!(!w.is_one());
        prop_assert_eq!(zoo::inner(&w).ia_depth().unwrap(), w.gamma_depth().plus(1));
    }
}
