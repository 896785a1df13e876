use num_traits::One;

use super::poly::UniPoly;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::TheoryKind;

/// The `d`-th cyclotomic polynomial, by exact division of `u^d - 1` by `Phi_e` for every
/// proper divisor `e` of `d`. Panics if `d == 0`.
pub fn cyclotomic(d: usize) -> UniPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    // only divisors of d are ever needed, and divisors of divisors are divisors
    let divisors: Vec<usize> = (1..=d).filter(|e| d.is_multiple_of(*e)).collect();
    let mut built: Vec<(usize, UniPoly)> = Vec::with_capacity(divisors.len());
    for &e in &divisors {
        let mut p = &UniPoly::monomial(Scalar::one(), e) - &UniPoly::one();
        for (f, phi) in built.iter().filter(|(f, _)| e % f == 0) {
            debug_assert!(*f < e);
            p = p.exact_div(phi).expect("Phi_f divides u^e - 1");
        }
        built.push((e, p));
    }
    built.pop().expect("d divides itself").1
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// Whether `f` lies in the localization of the theory's coefficient ring at the Euler
/// classes of fixed-point-free representations.
///
/// Borel: the denominator is a power of `u`. K-theory: after removing powers of `u`, the
/// denominator factors completely into cyclotomic polynomials.
pub fn localized_membership(f: &RationalFunction, theory: TheoryKind) -> bool {
    let den = f.den();
    let val = den.u_valuation();
    let mut rest = den.shift_down(val);
    match theory {
        TheoryKind::Borel => rest.is_one(),
        TheoryKind::KTheory => {
            // deg Phi_d = phi(d) >= sqrt(d / 2), so candidates have index <= 2 deg^2
            let mut d = 1;
            while let Some(deg) = rest.degree().filter(|&deg| deg >= 1) {
                if d > 2 * deg * deg {
                    return false;
                }
                if totient(d) > deg {
                    d += 1;
                    continue;
                }
                match rest.exact_div(&cyclotomic(d)) {
                    Some(quot) => rest = quot,
                    None => d += 1,
                }
            }
            true
        }
    }
}
