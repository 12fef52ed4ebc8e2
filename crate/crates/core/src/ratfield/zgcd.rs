//! Integer polynomial kernels in Z[t][x]: products, exact quotients and
//! gcds by subresultant remainder sequences.
//!
//! Rational polynomials are cleared to integer coefficients first; working
//! in Z[t][x] avoids renormalizing a rational at every arithmetic step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Univariate integer polynomial, increasing degree, no trailing zeros.
pub(crate) type ZPoly = Vec<BigInt>;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn int_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_int(p: &[BigInt], c: &BigInt) -> ZPoly {
    p.iter().map(|a| a / c).collect()
}

/// Primitive part with positive leading coefficient.
fn zprimitive(p: &[BigInt]) -> ZPoly {
    let mut c = int_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    if c.is_one() {
        p.to_vec()
    } else {
        div_int(p, &c)
    }
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn zscale(a: &[BigInt], c: &BigInt) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn zprem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient in Z[t]; `None` if `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Gcd in Z[t], positive leading coefficient; gcd(0, 0) = 0.
pub(crate) fn zgcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return zprimitive_signed(&b);
    }
    if b.is_empty() {
        return zprimitive_signed(&a);
    }
    if let Some(g) = zheu_gcd(&a, &b) {
        return g;
    }
    let c = int_content(&a).gcd(&int_content(&b));
    let mut a = zprimitive(&a);
    let mut b = zprimitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![c];
        }
        let r = zprem(&a, &b);
        a = b;
        b = zprimitive(&r);
    }
    zscale(&a, &c)
}

fn zprimitive_signed(p: &[BigInt]) -> ZPoly {
    if p.last().is_some_and(Signed::is_negative) {
        p.iter().map(|c| -c).collect()
    } else {
        p.to_vec()
    }
}

/// Bivariate integer polynomial as an element of Z[t][x]:
/// index = degree in x, entry = coefficient in Z[t].
pub(crate) type XPoly = Vec<ZPoly>;

fn xtrim(p: &mut XPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn xcontent(p: &[ZPoly]) -> ZPoly {
    let mut g: ZPoly = Vec::new();
    for c in p {
        g = zgcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn xprimitive(p: &[ZPoly]) -> XPoly {
    let c = xcontent(p);
    if c.len() == 1 && c[0].is_one() {
        return p.to_vec();
    }
    p.iter()
        .map(|a| zdiv_exact(a, &c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`, with the
/// exact power even when some reduction steps are skipped.
fn xprem(a: &[ZPoly], b: &[ZPoly]) -> XPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    xtrim(&mut r);
    let mut missing = (r.len() + 1).saturating_sub(b.len());
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = zmul(c, lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = zsub(&r[shift + j], &zmul(&lr, bj));
        }
        xtrim(&mut r);
        missing -= 1;
    }
    if missing > 0 && !r.is_empty() {
        let scale = zpow(lb, missing);
        for c in r.iter_mut() {
            *c = zmul(c, &scale);
        }
    }
    r
}

fn zadd_into(acc: &mut ZPoly, b: &[BigInt]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), BigInt::zero());
    }
    for (a, c) in acc.iter_mut().zip(b) {
        *a += c;
    }
    trim(acc);
}

/// Product in Z[t][x].
pub(crate) fn xmul(a: &[ZPoly], b: &[ZPoly]) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out: XPoly = vec![Vec::new(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_empty() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_empty() {
                zadd_into(&mut out[i + j], &zmul(ca, cb));
            }
        }
    }
    xtrim(&mut out);
    out
}

/// Exact quotient in Z[t][x]; `None` if `b` does not divide `a` there.
pub(crate) fn xdiv_exact(a: &[ZPoly], b: &[ZPoly]) -> Option<XPoly> {
    let mut b = b.to_vec();
    xtrim(&mut b);
    let db = b.len().checked_sub(1)?;
    let lb = &b[db];
    let mut r = a.to_vec();
    xtrim(&mut r);
    if r.len() <= db {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q: XPoly = vec![Vec::new(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = zdiv_exact(&r[dr], lb)?;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = zsub(&r[shift + j], &zmul(&c, bj));
        }
        q[shift] = c;
        xtrim(&mut r);
    }
    if r.is_empty() {
        xtrim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Gcd of all integer coefficients.
pub(crate) fn xint_content(p: &[ZPoly]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p.iter().flatten() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn xdiv_int(p: &[ZPoly], c: &BigInt) -> XPoly {
    p.iter().map(|z| div_int(z, c)).collect()
}

/// Sum in Z[t][x].
pub(crate) fn xadd(a: &[ZPoly], b: &[ZPoly]) -> XPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (acc, c) in out.iter_mut().zip(short) {
        zadd_into(acc, c);
    }
    xtrim(&mut out);
    out
}

pub(crate) fn xneg(p: &[ZPoly]) -> XPoly {
    p.iter().map(|c| c.iter().map(|a| -a).collect()).collect()
}

pub(crate) fn xscale_int(p: &[ZPoly], c: &BigInt) -> XPoly {
    if c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|z| zscale(z, c)).collect()
}

/// Partial derivative in x.
pub(crate) fn xderiv_x(p: &[ZPoly]) -> XPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| zscale(c, &BigInt::from(k)))
        .collect()
}

/// Partial derivative in t.
pub(crate) fn xderiv_t(p: &[ZPoly]) -> XPoly {
    let mut out: XPoly = p
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * BigInt::from(k))
                .collect()
        })
        .collect();
    xtrim(&mut out);
    out
}

/// True for the constants 1 and -1.
pub(crate) fn xis_unit(p: &[ZPoly]) -> bool {
    p.len() == 1 && p[0].len() == 1 && p[0][0].abs().is_one()
}

fn max_norm<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    coeffs.map(|c| c.abs()).max().unwrap_or_default()
}

fn eval_at(p: &[BigInt], at: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
}

/// Digits of `n` in base `xi`, each in the symmetric range; inverse of
/// evaluation at `xi` when the coefficients are small enough.
fn interpolate(mut n: BigInt, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut out = Vec::new();
    while !n.is_zero() {
        let mut r = n.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        n = (n - &r) / xi;
        out.push(r);
    }
    out
}

/// Starting evaluation point of the heuristic gcd, from the coefficient
/// sizes of both inputs.
fn heuristic_point(fnorm: &BigInt, gnorm: &BigInt, flc: &BigInt, glc: &BigInt) -> BigInt {
    let bound: BigInt = fnorm.min(gnorm) * 2 + 29;
    let root = bound.sqrt() * 99;
    let by_lc: BigInt = (fnorm / flc.abs()).min(gnorm / glc.abs()) * 2 + 2;
    bound.min(root).max(by_lc)
}

fn next_point(xi: &BigInt) -> BigInt {
    xi * 73794 * xi.sqrt().sqrt() / 27011
}

const HEURISTIC_ATTEMPTS: usize = 6;

/// Heuristic gcd in Z[t]: the integer gcd of the values at a large point,
/// read back in base `xi`, is the gcd whenever it divides both inputs.
fn zheu_gcd(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let cf = int_content(f);
    let cg = int_content(g);
    let common = cf.gcd(&cg);
    if f.len() == 1 || g.len() == 1 {
        return Some(vec![common]);
    }
    let f = div_int(f, &cf);
    let g = div_int(g, &cg);
    let mut xi = heuristic_point(
        &max_norm(f.iter()),
        &max_norm(g.iter()),
        f.last()?,
        g.last()?,
    );
    for _ in 0..HEURISTIC_ATTEMPTS {
        let (fv, gv) = (eval_at(&f, &xi), eval_at(&g, &xi));
        if !fv.is_zero() && !gv.is_zero() {
            let h = zprimitive(&interpolate(fv.gcd(&gv), &xi));
            if !h.is_empty() && zdiv_exact(&f, &h).is_some() && zdiv_exact(&g, &h).is_some() {
                return Some(zscale(&h, &common));
            }
        }
        xi = next_point(&xi);
    }
    None
}

/// Heuristic gcd in Z[t][x]: evaluating t at a large point reduces to a
/// gcd in Z[x], whose integer coefficients are read back in base `xi`.
fn xheu_gcd(f: &[ZPoly], g: &[ZPoly]) -> Option<XPoly> {
    let cf = xint_content(f);
    let cg = xint_content(g);
    let common = cf.gcd(&cg);
    let f = xdiv_int(f, &cf);
    let g = xdiv_int(g, &cg);
    let mut xi = heuristic_point(
        &max_norm(f.iter().flatten()),
        &max_norm(g.iter().flatten()),
        f.last()?.last()?,
        g.last()?.last()?,
    );
    for _ in 0..HEURISTIC_ATTEMPTS {
        let mut fv: ZPoly = f.iter().map(|c| eval_at(c, &xi)).collect();
        let mut gv: ZPoly = g.iter().map(|c| eval_at(c, &xi)).collect();
        trim(&mut fv);
        trim(&mut gv);
        if !fv.is_empty() && !gv.is_empty() {
            let hv = zgcd(&fv, &gv);
            let mut h: XPoly = hv.into_iter().map(|c| interpolate(c, &xi)).collect();
            xtrim(&mut h);
            if !h.is_empty() {
                let content = xint_content(&h);
                let mut h = xdiv_int(&h, &content);
                if h.last().and_then(|c| c.last()).is_some_and(Signed::is_negative) {
                    h = h.iter().map(|c| c.iter().map(|a| -a).collect()).collect();
                }
                if xdiv_exact(&f, &h).is_some() && xdiv_exact(&g, &h).is_some() {
                    return Some(h.iter().map(|c| zscale(c, &common)).collect());
                }
            }
        }
        xi = next_point(&xi);
    }
    None
}

/// A prime below 2^31, so products of residues fit in a u64.
const PRIME: u64 = 2_147_483_647;

fn residue(c: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((c % &p) + &p) % &p;
    r.try_into().expect("reduced below the prime")
}

fn eval_mod(p: &[BigInt], at: u64) -> u64 {
    p.iter()
        .rev()
        .fold(0, |acc, c| (acc * at % PRIME + residue(c)) % PRIME)
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

/// Degree of the gcd of two polynomials over GF(p).
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().expect("nonempty"), PRIME - 2);
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") * inv % PRIME;
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + PRIME - q * bj % PRIME) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Whether the gcd of two polynomials of positive x-degree is certainly
/// free of x, judged from one image t = c mod p where neither leading
/// coefficient vanishes. The image gcd can only be larger than the true
/// one, so degree 0 there is a proof.
fn coprime_in_x(a: &[ZPoly], b: &[ZPoly]) -> bool {
    const POINTS: [u64; 4] = [1_000_003, 7919, 104_729, 31_337];
    for at in POINTS {
        let ia: Vec<u64> = a.iter().map(|c| eval_mod(c, at)).collect();
        let ib: Vec<u64> = b.iter().map(|c| eval_mod(c, at)).collect();
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        return gcd_degree_mod(ia, ib) == 0;
    }
    false
}

fn zpow(a: &[BigInt], e: usize) -> ZPoly {
    (0..e).fold(vec![BigInt::one()], |acc, _| zmul(&acc, a))
}

/// Gcd in Z[t][x], up to sign.
pub(crate) fn xgcd(a: &[ZPoly], b: &[ZPoly]) -> XPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    xtrim(&mut a);
    xtrim(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if let Some(g) = xheu_gcd(&a, &b) {
        return g;
    }
    let content = zgcd(&xcontent(&a), &xcontent(&b));
    if a.len() == 1 || b.len() == 1 || coprime_in_x(&a, &b) {
        return vec![content];
    }
    let mut a = xprimitive(&a);
    let mut b = xprimitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    // Subresultant remainder sequence: the divisor g·h^δ removes the
    // predictable growth exactly, so no content is taken until the end.
    let mut g: ZPoly = vec![BigInt::one()];
    let mut h: ZPoly = vec![BigInt::one()];
    loop {
        let delta = a.len() - b.len();
        let r = xprem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![content];
        }
        let divisor = zmul(&g, &zpow(&h, delta));
        a = b;
        b = r
            .iter()
            .map(|c| zdiv_exact(c, &divisor).expect("subresultant division is exact"))
            .collect();
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            let num = zpow(&g, delta);
            zdiv_exact(&num, &zpow(&h, delta - 1)).expect("subresultant division is exact")
        };
    }
    xprimitive(&b).iter().map(|c| zmul(c, &content)).collect()
}
