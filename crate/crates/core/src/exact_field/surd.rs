//! Nested-radical notation for tower elements, e.g. `2cos(3π/8) = √(2-√2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::element::FieldElement;
use super::rational::Rational;

/// Reduces an angle (as a multiple of π) into `[0, 1]` using `cos(a) = cos(-a) = cos(a + 2)`.
fn fold_angle(a: &Rational) -> Rational {
    let two = BigInt::from(2);
    let num = a.numerator().mod_floor(&(a.denominator() * &two));
    let mut a = Rational::new(num, a.denominator().clone()).expect("nonzero denominator");
    if a > Rational::one() {
        a = &Rational::from(2) - &a;
    }
    a
}

/// `2cos(aπ)` as nested square roots. Requires a power-of-two denominator after folding,
/// otherwise the plain `2cos(aπ)` form is returned.
pub fn surd_two_cos(angle: &Rational) -> String {
    let a = fold_angle(angle);
    let den = a.denominator();
    let pow2 = den.is_one() || (den > &BigInt::zero() && (den & (den - BigInt::one())).is_zero());
    if !pow2 {
        return format!("2cos({a}π)");
    }
    surd_folded(&a)
}

fn surd_folded(a: &Rational) -> String {
    let half: Rational = Rational::new(1, 2).expect("nonzero");
    if a.is_zero() {
        return "2".into();
    }
    if a.is_one() {
        return "-2".into();
    }
    if *a == half {
        return "0".into();
    }
    if *a > half {
        return format!("-{}", surd_folded(&(&Rational::one() - a)));
    }
    // 2cos(aπ) = √(2 + 2cos(2aπ)) for 0 < a < 1/2
    let inner = surd_folded(&(a + a));
    match inner.as_str() {
        "0" => "√2".into(),
        s => match s.strip_prefix('-') {
            Some(rest) => format!("√(2-{rest})"),
            None => format!("√(2+{s})"),
        },
    }
}

fn scaled_term(coeff: &Rational, surd: &str, first: bool) -> String {
    let (negative, surd) = match surd.strip_prefix('-') {
        Some(rest) => (!coeff.is_negative(), rest),
        None => (coeff.is_negative(), surd),
    };
    let mag = coeff.abs();
    let body = if mag.is_one() {
        surd.to_string()
    } else if mag.numerator().is_one() {
        format!("{surd}/{}", mag.denominator())
    } else if mag.is_integer() {
        format!("{mag}·{surd}")
    } else {
        format!("({mag})·{surd}")
    };
    match (first, negative) {
        (true, true) => format!("-{body}"),
        (true, false) => body,
        (false, true) => format!(" - {body}"),
        (false, false) => format!(" + {body}"),
    }
}

impl FieldElement {
    /// Exact value written with nested radicals, one term per cosine-basis coefficient.
    pub fn to_surd_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let denom = Rational::from(BigInt::one() << (self.level() + 1));
        let mut out = String::new();
        for (i, c) in self.cos_terms() {
            let first = out.is_empty();
            if i == 0 {
                let mag = c.abs();
                out.push_str(&match (first, c.is_negative()) {
                    (true, true) => format!("-{mag}"),
                    (true, false) => format!("{mag}"),
                    (false, true) => format!(" - {mag}"),
                    (false, false) => format!(" + {mag}"),
                });
                continue;
            }
            let angle = &Rational::from(i as i64) / &denom;
            out.push_str(&scaled_term(c, &surd_two_cos(&angle), first));
        }
        out
    }
}
