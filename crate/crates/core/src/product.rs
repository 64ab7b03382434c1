//! Cross products of chains, star products of forms, and the diagonal.

use thiserror::Error;

use crate::chain::{Chain, Coeff, ElemPath, Form};
use crate::digraph::{cartesian_product, Digraph, Vertex};
use crate::omega::membership;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("the {0} factor is not in Ω of its digraph")]
    FactorNotInOmega(&'static str),
    #[error("the cross product left Ω of the product digraph")]
    ProductNotInOmega,
    #[error("the chain is not in Ω of its digraph")]
    NotOmegaMember,
}

/// Cross product of two elementary paths: the signed sum over staircase
/// paths from `(x_0, y_0)` to `(x_p, y_q)`.
pub fn cross_elementary(x: &ElemPath, y: &ElemPath) -> Vec<(bool, ElemPath)> {
    let mut out = Vec::new();
    // A staircase is a choice of which of the p+q steps are horizontal.
    let mut steps: Vec<bool> = Vec::with_capacity(x.len() + y.len());
    fn walk(
        x: &ElemPath,
        y: &ElemPath,
        i: usize,
        j: usize,
        steps: &mut Vec<bool>,
        out: &mut Vec<(bool, ElemPath)>,
    ) {
        if i == x.len() && j == y.len() {
            let (mut a, mut b, mut l) = (0usize, 0usize, 0usize);
            let mut vs = vec![Vertex::pair(&x.vertices()[0], &y.vertices()[0])];
            for &horizontal in steps.iter() {
                if horizontal {
                    a += 1;
                    l += b;
                } else {
                    b += 1;
                }
                vs.push(Vertex::pair(&x.vertices()[a], &y.vertices()[b]));
            }
            out.push((l % 2 == 1, ElemPath::new(vs).expect("nonempty")));
            return;
        }
        if i < x.len() {
            steps.push(true);
            walk(x, y, i + 1, j, steps, out);
            steps.pop();
        }
        if j < y.len() {
            steps.push(false);
            walk(x, y, i, j + 1, steps, out);
            steps.pop();
        }
    }
    walk(x, y, 0, 0, &mut steps, &mut out);
    out
}

/// Bilinear cross product `u × v`.
pub fn cross<R: Coeff>(u: &Chain<R>, v: &Chain<R>) -> Chain<R> {
    let mut out = Chain::zero(u.dim() + v.dim());
    for (x, a) in u.terms() {
        for (y, b) in v.terms() {
            let ab = a.clone() * b.clone();
            for (negative, path) in cross_elementary(x, y) {
                out.add_term(path, if negative { -ab.clone() } else { ab.clone() });
            }
        }
    }
    out
}

/// `u × v` with `u ∈ Ω(g)` and `v ∈ Ω(h)` checked, and the result checked
/// to lie in `Ω(g ⊡ h)`.
pub fn cross_certified<R: Coeff>(
    g: &Digraph,
    h: &Digraph,
    u: &Chain<R>,
    v: &Chain<R>,
) -> Result<Chain<R>, ProductError> {
    if !membership(g, u) {
        return Err(ProductError::FactorNotInOmega("first"));
    }
    if !membership(h, v) {
        return Err(ProductError::FactorNotInOmega("second"));
    }
    let w = cross(u, v);
    if !membership(&cartesian_product(g, h), &w) {
        return Err(ProductError::ProductNotInOmega);
    }
    Ok(w)
}

/// `e^{i_0…i_p} ⋆ e^{j_0…j_q} = e^{(i_0 j_0)…(i_p j_0)(i_p j_1)…(i_p j_q)}`,
/// extended bilinearly.
pub fn star(alpha: &Form, beta: &Form) -> Form {
    let mut out = Form::zero(alpha.dim() + beta.dim());
    for (x, a) in alpha.terms() {
        for (y, b) in beta.terms() {
            let y0 = &y.vertices()[0];
            let xp = x.end();
            let mut vs: Vec<Vertex> = x.vertices().iter().map(|v| Vertex::pair(v, y0)).collect();
            vs.extend(y.vertices()[1..].iter().map(|w| Vertex::pair(xp, w)));
            out.add_term(ElemPath::new(vs).expect("nonempty"), a * b);
        }
    }
    out
}

/// The diagonal `Σ_i Σ_I c_I e_{I|0..i} × e_{I|i..n}`.
pub fn diagonal<R: Coeff>(u: &Chain<R>) -> Chain<R> {
    let n = u.dim();
    let mut out = Chain::zero(n);
    for (p, c) in u.terms() {
        for i in 0..=n {
            let head = Chain::term(c.clone(), p.slice(0, i));
            let tail = Chain::elementary(p.slice(i, n));
            out.add_assign_scaled(&cross(&head, &tail), &R::one());
        }
    }
    out
}

/// The transposed diagonal `Σ_i (-1)^{i(n-i)} Σ_I c_I e_{I|i..n} × e_{I|0..i}`.
pub fn transposed_diagonal<R: Coeff>(u: &Chain<R>) -> Chain<R> {
    let n = u.dim();
    let mut out = Chain::zero(n);
    for (p, c) in u.terms() {
        for i in 0..=n {
            let sign = if (i * (n - i)) % 2 == 1 {
                -R::one()
            } else {
                R::one()
            };
            let tail = Chain::term(c.clone(), p.slice(i, n));
            let head = Chain::elementary(p.slice(0, i));
            out.add_assign_scaled(&cross(&tail, &head), &sign);
        }
    }
    out
}

/// The fixed-`i` slices `Σ_I c_I e_{I|0..i} × e_{I|i..n}`, `i = 0..=n`.
pub fn diagonal_slices<R: Coeff>(u: &Chain<R>) -> Vec<Chain<R>> {
    let n = u.dim();
    (0..=n)
        .map(|i| {
            let mut out = Chain::zero(n);
            for (p, c) in u.terms() {
                let head = Chain::term(c.clone(), p.slice(0, i));
                out.add_assign_scaled(&cross(&head, &Chain::elementary(p.slice(i, n))), &R::one());
            }
            out
        })
        .collect()
}

/// `Δ̃♯ u` or `t♯Δ̃♯ u` for `u ∈ Ω_n(g)`, with the result checked to lie in
/// `Ω_n(g ⊡ g)`.
pub fn diagonal_certified<R: Coeff>(
    g: &Digraph,
    u: &Chain<R>,
    transposed: bool,
) -> Result<Chain<R>, ProductError> {
    if !membership(g, u) {
        return Err(ProductError::NotOmegaMember);
    }
    let d = if transposed {
        transposed_diagonal(u)
    } else {
        diagonal(u)
    };
    if !membership(&cartesian_product(g, g), &d) {
        return Err(ProductError::ProductNotInOmega);
    }
    Ok(d)
}
