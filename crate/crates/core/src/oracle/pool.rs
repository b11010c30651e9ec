//! Expressions generated bottom-up in canonical order.
//!
//! Every expression in the pool has a global index, and indices follow
//! [`Expr::canonical_cmp`]. A new expression of size `n` is an operator over
//! pool members, so walking stars, then operator kind, then child indices in
//! ascending order yields the size-`n` candidates already sorted.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::expr::{Alphabet, Dialect, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Union,
    Cat,
    Star,
    Not,
}

#[derive(Clone, Debug)]
pub(crate) enum Node {
    Leaf(Expr),
    Unary(Op, usize),
    Binary(Op, usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Candidate {
    pub op: Op,
    pub left: usize,
    pub right: Option<usize>,
    pub stars: usize,
}

#[derive(Default)]
pub(crate) struct Pool {
    nodes: Vec<Node>,
    sizes: Vec<usize>,
    stars: Vec<usize>,
    by_shape: HashMap<(usize, usize), Vec<usize>>,
}

impl Pool {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `∅`, `ε`, then the symbols in alphabet order.
    pub fn leaves(alphabet: &Alphabet) -> Vec<Expr> {
        let mut out = vec![Expr::Empty, Expr::Epsilon];
        out.extend(alphabet.symbols().iter().map(|&c| Expr::Atom(c)));
        out
    }

    pub fn push_leaf(&mut self, e: Expr) -> usize {
        self.push(Node::Leaf(e), 1, 0)
    }

    pub fn push_candidate(&mut self, c: Candidate, size: usize) -> usize {
        let node = match c.right {
            Some(r) => Node::Binary(c.op, c.left, r),
            None => Node::Unary(c.op, c.left),
        };
        self.push(node, size, c.stars)
    }

    fn push(&mut self, node: Node, size: usize, stars: usize) -> usize {
        let i = self.nodes.len();
        self.nodes.push(node);
        self.sizes.push(size);
        self.stars.push(stars);
        self.by_shape.entry((size, stars)).or_default().push(i);
        i
    }

    pub fn expr(&self, i: usize) -> Expr {
        match &self.nodes[i] {
            Node::Leaf(e) => e.clone(),
            Node::Unary(Op::Star, x) => Expr::star(self.expr(*x)),
            Node::Unary(_, x) => Expr::not(self.expr(*x)),
            Node::Binary(Op::Union, l, r) => Expr::union(self.expr(*l), self.expr(*r)),
            Node::Binary(_, l, r) => Expr::cat(self.expr(*l), self.expr(*r)),
        }
    }

    fn shape(&self, size: usize, stars: usize) -> &[usize] {
        self.by_shape.get(&(size, stars)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Offers every size-`n` candidate over the current pool, in canonical
    /// order, to `visit`. The visitor pushes the ones it keeps; since they
    /// are pushed in order, indices stay canonical.
    pub fn grow<E>(
        &mut self,
        n: usize,
        dialect: Dialect,
        max_stars: Option<usize>,
        visit: &mut dyn FnMut(&mut Pool, Candidate) -> Result<ControlFlow<()>, E>,
    ) -> Result<ControlFlow<()>, E> {
        if n < 2 {
            return Ok(ControlFlow::Continue(()));
        }
        let star_cap = max_stars.unwrap_or(n - 1).min(n - 1);
        for t in 0..=star_cap {
            for op in [Op::Union, Op::Cat, Op::Star, Op::Not] {
                let cands = self.candidates(n, t, op, dialect);
                for c in cands {
                    if let ControlFlow::Break(()) = visit(self, c)? {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    // Collected up front so the visitor may push into the pool; new members
    // have size n and are never children of other size-n candidates.
    fn candidates(&self, n: usize, t: usize, op: Op, dialect: Dialect) -> Vec<Candidate> {
        let mut out = Vec::new();
        match op {
            Op::Union | Op::Cat => {
                for ls in 1..n - 1 {
                    let rs = n - 1 - ls;
                    for lt in 0..=t {
                        for &l in self.shape(ls, lt) {
                            for &r in self.shape(rs, t - lt) {
                                out.push(Candidate { op, left: l, right: Some(r), stars: t });
                            }
                        }
                    }
                }
            }
            Op::Star if t >= 1 => {
                for &x in self.shape(n - 1, t - 1) {
                    out.push(Candidate { op, left: x, right: None, stars: t });
                }
            }
            Op::Not => {
                let allowed = match dialect {
                    Dialect::Re => false,
                    Dialect::Resf => t == 0,
                    Dialect::Gre => true,
                };
                if allowed {
                    for &x in self.shape(n - 1, t) {
                        out.push(Candidate { op, left: x, right: None, stars: t });
                    }
                }
            }
            Op::Star => {}
        }
        out
    }
}
