//! Exact evaluation of the quantitative constants: the pigeonhole number
//! P(r,m), the Erdős–Szekeres upper-bound Ramsey variant R(p,q) with its
//! iterates R^i, the linked-family constant C(a,b), and the derived towers
//! q, c, d, m, b, the torso degree bound, and the deletion bound.
//!
//! The towers outgrow every machine for most arguments (c(r,p) iterates R
//! an astronomically large number of times), so evaluation works in a
//! monotone saturation arithmetic: every operation used here is
//! nondecreasing in each argument, and once a value can no longer be held
//! exactly the evaluator carries a certified lower bound instead. A result
//! is either `Exact` or `AtLeast`, never an overestimate.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Cap on the bit length of exactly held intermediates.
const BIT_CAP: u64 = 1 << 16;
/// Cap on the small side of a binomial computed exactly.
const K_CAP: u64 = 512;
/// Cap on literal Ramsey iterations.
const ITER_CAP: u64 = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("unknown constant name {0:?}")]
    UnknownName(String),
    #[error("constant {name} expects {expected} arguments, got {got}")]
    BadArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("constant {name} requires arguments >= 1")]
    ArgumentTooSmall { name: String },
    #[error("exact Ramsey search infeasible for R({0},{1}): would require enumerating all graphs on more than {MAX_EXACT_HOST} vertices")]
    ExactRamseyInfeasible(u64, u64),
}

/// An exact value or a certified lower bound on a value too large to hold.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Exact(BigUint),
    AtLeast(BigUint),
}

impl Value {
    pub fn exact(v: u64) -> Self {
        Value::Exact(BigUint::from(v))
    }

    pub fn bound(&self) -> &BigUint {
        match self {
            Value::Exact(b) | Value::AtLeast(b) => b,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    fn wrap(bound: BigUint, exact: bool) -> Self {
        if exact {
            Value::Exact(bound)
        } else {
            Value::AtLeast(bound)
        }
    }

    /// Decimal rendering; lower bounds carry a `>=` prefix.
    pub fn to_decimal_string(&self) -> String {
        match self {
            Value::Exact(b) => b.to_string(),
            Value::AtLeast(b) => format!(">= {b}"),
        }
    }
}

pub fn add(a: &Value, b: &Value) -> Value {
    Value::wrap(a.bound() + b.bound(), a.is_exact() && b.is_exact())
}

pub fn mul(a: &Value, b: &Value) -> Value {
    Value::wrap(a.bound() * b.bound(), a.is_exact() && b.is_exact())
}

/// Subtracts a small constant; saturates at zero. Monotone in `a`.
pub fn sub_const(a: &Value, c: u64) -> Value {
    let c = BigUint::from(c);
    let bound = if *a.bound() >= c {
        a.bound() - c
    } else {
        BigUint::zero()
    };
    Value::wrap(bound, a.is_exact())
}

/// `base ^ exp` for base >= 1. Saturates when the result would exceed the
/// bit cap: the reported bound is `base ^ e` for the largest feasible e.
pub fn pow(base: &Value, exp: &Value) -> Value {
    assert!(!base.bound().is_zero(), "pow expects base >= 1");
    if base.bound().is_one() {
        // 1^e = 1 no matter how large e truly is.
        return Value::wrap(BigUint::one(), base.is_exact());
    }
    let base_bits = base.bound().bits();
    let max_exp = BIT_CAP / base_bits;
    let wanted = exp.bound();
    let (e, capped) = match u64::try_from(wanted) {
        Ok(e) if e <= max_exp => (e, false),
        _ => (max_exp, true),
    };
    let bound = base.bound().pow(u32::try_from(e).expect("capped exponent fits"));
    Value::wrap(bound, base.is_exact() && exp.is_exact() && !capped)
}

/// Binomial coefficient with a small second index, exact stepwise division.
fn binom_small(n: &BigUint, k: u64) -> BigUint {
    let mut result = BigUint::one();
    for i in 1..=k {
        let factor = n - BigUint::from(k - i);
        result = result * factor / BigUint::from(i);
    }
    result
}

/// `x * (x - 1) / 2`, monotone.
pub fn binom2(x: &Value) -> Value {
    let b = x.bound();
    let bound = if b.is_zero() {
        BigUint::zero()
    } else {
        b * (b - BigUint::one()) / BigUint::from(2u32)
    };
    Value::wrap(bound, x.is_exact())
}

/// Pigeonhole number P(r,m) = r(m-1) + 1: the least n such that any
/// r-coloring of an n-set has m elements of one color.
pub fn pigeonhole(r: &Value, m: &Value) -> Value {
    let one = Value::exact(1);
    add(&mul(r, &sub_const(m, 1)), &one)
}

/// Upper-bound Ramsey variant: the Erdős–Szekeres recurrence
/// R(p,q) = R(p-1,q) + R(p,q-1) with R(1,q) = R(p,1) = 1, whose closed form
/// is the binomial C(p+q-2, p-1). Nondecreasing in both arguments.
pub fn ramsey_upper(p: &Value, q: &Value) -> Value {
    assert!(
        !p.bound().is_zero() && !q.bound().is_zero(),
        "ramsey_upper expects arguments >= 1"
    );
    let n = sub_const(&add(p, q), 2);
    let k_value = if p.bound() <= q.bound() { p } else { q };
    let k_bound = sub_const(k_value, 1);
    let (k, k_feasible) = match u64::try_from(k_bound.bound()) {
        Ok(k) if k <= K_CAP => (k, true),
        _ => (0, false),
    };
    if k_feasible && k.saturating_mul(n.bound().bits().max(1)) <= BIT_CAP {
        let bound = binom_small(n.bound(), k);
        Value::wrap(bound, p.is_exact() && q.is_exact() && k_bound.is_exact())
    } else {
        // C(n,k) >= n for 1 <= k <= n-1; here k >= K_CAP >= 1.
        Value::AtLeast(n.bound().clone().max(BigUint::one()))
    }
}

/// Iterated Ramsey bound R^i(a,b): R^0 = R(a,b), R^i = R(R^{i-1}, b).
/// Nondecreasing in every argument (R(x,b) >= x for b >= 1).
pub fn ramsey_iter(iterations: &Value, a: &Value, b: &Value) -> Value {
    assert!(
        !a.bound().is_zero() && !b.bound().is_zero(),
        "ramsey_iter expects a, b >= 1"
    );
    let mut current = ramsey_upper(a, b);
    if b.bound().is_one() {
        // R(x, 1) = 1 for every x, so all iterates collapse.
        return Value::wrap(BigUint::one(), b.is_exact());
    }
    let (want, want_exactly) = match u64::try_from(iterations.bound()) {
        Ok(i) if i <= ITER_CAP => (i, iterations.is_exact()),
        _ => (ITER_CAP, false),
    };
    let mut done_exactly = want_exactly;
    for step in 0..want {
        if current.bound().bits() * b.bound().bits().max(2) > BIT_CAP {
            // The next iterate will not fit; stop with what we have.
            let _ = step;
            done_exactly = false;
            break;
        }
        current = ramsey_upper(&current, b);
    }
    Value::wrap(
        current.bound().clone(),
        current.is_exact() && done_exactly && a.is_exact() && b.is_exact(),
    )
}

/// The linked-family constant C(a,b) = 2 P(a^r, b) with r = P(a^b, b):
/// C pairwise-linked sets of size at most a force a K_{b,b} subgraph.
pub fn clique_constant(a: &Value, b: &Value) -> Value {
    assert!(
        !a.bound().is_zero() && !b.bound().is_zero(),
        "clique_constant expects arguments >= 1"
    );
    let r = pigeonhole(&pow(a, b), b);
    let two = Value::exact(2);
    mul(&two, &pigeonhole(&pow(a, &r), b))
}

/// q(r,p) = R(r, C(rp, p)).
pub fn q_constant(r: &Value, p: &Value) -> Value {
    ramsey_upper(r, &clique_constant(&mul(r, p), p))
}

/// c(r,p) = R^{q(r,p)}(r, C(p,p)).
pub fn c_constant(r: &Value, p: &Value) -> Value {
    ramsey_iter(&q_constant(r, p), r, &clique_constant(p, p))
}

/// d(r,p) = c(r,p) + q(r,p).
pub fn d_constant(r: &Value, p: &Value) -> Value {
    add(&c_constant(r, p), &q_constant(r, p))
}

/// m(r,p) = R(d(r,p), 2p): subdivisions of K_m force the biclique dichotomy.
pub fn m_constant(r: &Value, p: &Value) -> Value {
    let two_p = mul(&Value::exact(2), p);
    ramsey_upper(&d_constant(r, p), &two_p)
}

/// b(p) = C(m,2) p + (m-2) + R(3, C(p,p)) with m = m(p,p): the block-number
/// bound for S_p-free graphs without K_{p,p} subgraphs.
pub fn b_constant(p: &Value) -> Value {
    let m = m_constant(p, p);
    let paths = mul(&binom2(&m), p);
    let long_paths = ramsey_upper(&Value::exact(3), &clique_constant(p, p));
    add(&add(&paths, &sub_const(&m, 2)), &long_paths)
}

/// Torso degree bound 2(b-1)(b-2).
pub fn degree_bound(b: &Value) -> Value {
    mul(&mul(&Value::exact(2), &sub_const(b, 1)), &sub_const(b, 2))
}

/// Deletion bound (3p+1) R(k, C(3p+1, p)) from the induction on the number
/// of tripod components.
pub fn delete_bound(k: &Value, p: &Value) -> Value {
    let arm = add(&mul(&Value::exact(3), p), &Value::exact(1));
    mul(&arm, &ramsey_upper(k, &clique_constant(&arm, p)))
}

/// Largest host size for the exhaustive exact Ramsey search (all labeled
/// graphs on up to this many vertices are enumerated).
pub const MAX_EXACT_HOST: u64 = 7;

/// Exact Ramsey number by exhaustive search. Trivial when either argument
/// is at most 2; beyond that every candidate host size is checked by
/// enumerating all labeled graphs, which caps the reachable range at
/// R(3,3) = 6 (deciding larger values would need hosts past 7 vertices).
pub fn ramsey_exact(p: u64, q: u64) -> Result<u64, ConstantsError> {
    if p == 0 || q == 0 {
        return Err(ConstantsError::ArgumentTooSmall {
            name: "Rexact".into(),
        });
    }
    if p == 1 || q == 1 {
        return Ok(1);
    }
    // R(2,q) = q: a graph on q vertices is complete or has a non-edge, and
    // K_{q-1} witnesses sharpness; symmetrically for R(p,2).
    if p == 2 {
        return Ok(q);
    }
    if q == 2 {
        return Ok(p);
    }
    for n in 1..=MAX_EXACT_HOST {
        if all_graphs_ramsey_good(n as usize, p as usize, q as usize) {
            return Ok(n);
        }
    }
    Err(ConstantsError::ExactRamseyInfeasible(p, q))
}

/// Does every labeled graph on n vertices contain an independent set of
/// size p or a clique of size q?
fn all_graphs_ramsey_good(n: usize, p: usize, q: usize) -> bool {
    let pairs = n * (n - 1) / 2;
    let pair_index = {
        let mut idx = vec![vec![0usize; n]; n];
        let mut next = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                idx[u][v] = next;
                idx[v][u] = next;
                next += 1;
            }
        }
        idx
    };
    let subset_pair_masks = |size: usize| -> Vec<u32> {
        let mut masks = Vec::new();
        for subset in 0u32..(1 << n) {
            if subset.count_ones() as usize != size {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| subset >> v & 1 == 1).collect();
            let mut mask = 0u32;
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    mask |= 1 << pair_index[u][v];
                }
            }
            masks.push(mask);
        }
        masks
    };
    let independent_masks = if p <= n { subset_pair_masks(p) } else { Vec::new() };
    let clique_masks = if q <= n { subset_pair_masks(q) } else { Vec::new() };
    for g in 0u32..(1u32 << pairs) {
        let good = independent_masks.iter().any(|&m| g & m == 0)
            || clique_masks.iter().any(|&m| g & m == m);
        if !good {
            return false;
        }
    }
    true
}

fn check_args(name: &str, args: &[u64], expected: usize) -> Result<Vec<Value>, ConstantsError> {
    if args.len() != expected {
        return Err(ConstantsError::BadArity {
            name: name.into(),
            expected,
            got: args.len(),
        });
    }
    let min = if name == "Riter" { 0 } else { 1 };
    if args
        .iter()
        .enumerate()
        .any(|(i, &a)| a < min && !(name == "Riter" && i == 0))
    {
        return Err(ConstantsError::ArgumentTooSmall { name: name.into() });
    }
    Ok(args.iter().map(|&a| Value::exact(a)).collect())
}

/// Name-based evaluation backing the `constants` CLI subcommand.
pub fn evaluate(name: &str, args: &[u64]) -> Result<Value, ConstantsError> {
    match name {
        "R" => {
            let v = check_args(name, args, 2)?;
            Ok(ramsey_upper(&v[0], &v[1]))
        }
        "Rexact" => {
            if args.len() != 2 {
                return Err(ConstantsError::BadArity {
                    name: name.into(),
                    expected: 2,
                    got: args.len(),
                });
            }
            ramsey_exact(args[0], args[1]).map(Value::exact)
        }
        "Riter" => {
            let v = check_args(name, args, 3)?;
            Ok(ramsey_iter(&v[0], &v[1], &v[2]))
        }
        "P" => {
            let v = check_args(name, args, 2)?;
            Ok(pigeonhole(&v[0], &v[1]))
        }
        "C" => {
            let v = check_args(name, args, 2)?;
            Ok(clique_constant(&v[0], &v[1]))
        }
        "q" => {
            let v = check_args(name, args, 2)?;
            Ok(q_constant(&v[0], &v[1]))
        }
        "c" => {
            let v = check_args(name, args, 2)?;
            Ok(c_constant(&v[0], &v[1]))
        }
        "d" => {
            let v = check_args(name, args, 2)?;
            Ok(d_constant(&v[0], &v[1]))
        }
        "m" => {
            let v = check_args(name, args, 2)?;
            Ok(m_constant(&v[0], &v[1]))
        }
        "b" => {
            let v = check_args(name, args, 1)?;
            Ok(b_constant(&v[0]))
        }
        "deg" => {
            let v = check_args(name, args, 1)?;
            Ok(degree_bound(&v[0]))
        }
        "delete" => {
            let v = check_args(name, args, 2)?;
            Ok(delete_bound(&v[0], &v[1]))
        }
        other => Err(ConstantsError::UnknownName(other.into())),
    }
}
