//! First-order logic over word models with `<` and one unary predicate `P`.
//!
//! Formulas are built by [`build_phi`] with macro nodes ([`Fo::Named`]) kept
//! for display. Size counts the expanded tree: every connective, quantifier
//! and atom is one node, `⊤` included, and macro nodes themselves are free.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::expr::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Var {
    pub id: u32,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fo {
    Top,
    P(Var),
    Less(Var, Var),
    Eq(Var, Var),
    Not(Box<Fo>),
    And(Box<Fo>, Box<Fo>),
    Or(Box<Fo>, Box<Fo>),
    Implies(Box<Fo>, Box<Fo>),
    Exists(Var, Box<Fo>),
    ForAll(Var, Box<Fo>),
    /// A macro application; semantically just `body`.
    Named {
        name: String,
        args: Vec<Var>,
        body: Box<Fo>,
    },
}

fn not(f: Fo) -> Fo {
    Fo::Not(Box::new(f))
}

fn and(l: Fo, r: Fo) -> Fo {
    Fo::And(Box::new(l), Box::new(r))
}

fn and_all(fs: Vec<Fo>) -> Fo {
    fs.into_iter().reduce(and).unwrap_or(Fo::Top)
}

fn or(l: Fo, r: Fo) -> Fo {
    Fo::Or(Box::new(l), Box::new(r))
}

fn implies(l: Fo, r: Fo) -> Fo {
    Fo::Implies(Box::new(l), Box::new(r))
}

fn exists(v: &Var, f: Fo) -> Fo {
    Fo::Exists(v.clone(), Box::new(f))
}

fn forall(v: &Var, f: Fo) -> Fo {
    Fo::ForAll(v.clone(), Box::new(f))
}

fn less(x: &Var, y: &Var) -> Fo {
    Fo::Less(x.clone(), y.clone())
}

fn eq(x: &Var, y: &Var) -> Fo {
    Fo::Eq(x.clone(), y.clone())
}

fn named(name: String, args: &[&Var], body: Fo) -> Fo {
    Fo::Named { name, args: args.iter().map(|v| (*v).clone()).collect(), body: Box::new(body) }
}

impl Fo {
    /// Node count after macro expansion.
    pub fn size(&self) -> usize {
        match self {
            Fo::Top | Fo::P(_) | Fo::Less(..) | Fo::Eq(..) => 1,
            Fo::Not(f) | Fo::Exists(_, f) | Fo::ForAll(_, f) => 1 + f.size(),
            Fo::And(l, r) | Fo::Or(l, r) | Fo::Implies(l, r) => 1 + l.size() + r.size(),
            Fo::Named { body, .. } => body.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Fo::Top => BTreeSet::new(),
            Fo::P(x) => [x.clone()].into(),
            Fo::Less(x, y) | Fo::Eq(x, y) => [x.clone(), y.clone()].into(),
            Fo::Not(f) | Fo::Named { body: f, .. } => f.free_vars(),
            Fo::And(l, r) | Fo::Or(l, r) | Fo::Implies(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            Fo::Exists(v, f) | Fo::ForAll(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// One line, macros shown as applications.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out
    }

    /// The formula followed by one definition line per macro, in order of
    /// first use.
    pub fn render_with_definitions(&self, name: &str) -> String {
        let mut defs: Vec<&Fo> = Vec::new();
        let mut seen = BTreeSet::new();
        collect_macros(self, &mut seen, &mut defs);
        let mut out = format!("{name} := {}\n", self.render());
        for d in defs {
            if let Fo::Named { name, args, body } = d {
                let args: Vec<&str> = args.iter().map(|v| v.name.as_str()).collect();
                let _ = writeln!(out, "{name}({}) := {}", args.join(", "), body.render());
            }
        }
        out
    }

    fn prec(&self) -> u8 {
        match self {
            Fo::Implies(..) => 0,
            Fo::Or(..) => 1,
            Fo::And(..) => 2,
            _ => 3,
        }
    }

    fn write(&self, out: &mut String, min_prec: u8) {
        let wrap = self.prec() < min_prec;
        if wrap {
            out.push('(');
        }
        match self {
            Fo::Top => out.push('⊤'),
            Fo::P(x) => {
                let _ = write!(out, "P({})", x.name);
            }
            Fo::Less(x, y) => {
                let _ = write!(out, "{} < {}", x.name, y.name);
            }
            Fo::Eq(x, y) => {
                let _ = write!(out, "{} = {}", x.name, y.name);
            }
            Fo::Not(f) => {
                out.push('¬');
                f.write_operand(out);
            }
            Fo::And(l, r) => {
                l.write(out, 2);
                out.push_str(" ∧ ");
                r.write(out, 2);
            }
            Fo::Or(l, r) => {
                l.write(out, 1);
                out.push_str(" ∨ ");
                r.write(out, 1);
            }
            Fo::Implies(l, r) => {
                l.write(out, 1);
                out.push_str(" → ");
                r.write(out, 1);
            }
            Fo::Exists(v, f) | Fo::ForAll(v, f) => {
                out.push(if matches!(self, Fo::Exists(..)) { '∃' } else { '∀' });
                out.push_str(&v.name);
                out.push(' ');
                f.write_operand(out);
            }
            Fo::Named { name, args, .. } => {
                let args: Vec<&str> = args.iter().map(|v| v.name.as_str()).collect();
                let _ = write!(out, "{name}({})", args.join(", "));
            }
        }
        if wrap {
            out.push(')');
        }
    }

    // Operands of ¬ and quantifiers: atoms, applications and other unary
    // nodes stand alone; anything binary or infix gets parentheses.
    fn write_operand(&self, out: &mut String) {
        match self {
            Fo::Top | Fo::P(_) | Fo::Named { .. } | Fo::Not(_) | Fo::Exists(..) | Fo::ForAll(..) => self.write(out, 3),
            _ => {
                out.push('(');
                self.write(out, 0);
                out.push(')');
            }
        }
    }
}

fn collect_macros<'a>(f: &'a Fo, seen: &mut BTreeSet<&'a str>, out: &mut Vec<&'a Fo>) {
    match f {
        Fo::Top | Fo::P(_) | Fo::Less(..) | Fo::Eq(..) => {}
        Fo::Not(g) | Fo::Exists(_, g) | Fo::ForAll(_, g) => collect_macros(g, seen, out),
        Fo::And(l, r) | Fo::Or(l, r) | Fo::Implies(l, r) => {
            collect_macros(l, seen, out);
            collect_macros(r, seen, out);
        }
        Fo::Named { name, body, .. } => {
            if seen.insert(name.as_str()) {
                out.push(f);
            }
            collect_macros(body, seen, out);
        }
    }
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap()).collect()
}

/// Fresh variables with readable names: the first pair named `a` is
/// `a₁, a₂`, later ones `a2₁, a2₂`, and so on.
#[derive(Default)]
struct Vars {
    next_id: u32,
    uses: HashMap<String, usize>,
}

impl Vars {
    fn tag(&mut self, base: &str) -> String {
        let n = self.uses.entry(base.to_string()).or_insert(0);
        *n += 1;
        if *n == 1 {
            base.to_string()
        } else {
            format!("{base}{n}")
        }
    }

    fn make(&mut self, name: String) -> Var {
        self.next_id += 1;
        Var { id: self.next_id - 1, name }
    }

    fn single(&mut self, base: &str) -> Var {
        let name = self.tag(base);
        self.make(name)
    }

    fn pair(&mut self, base: &str) -> (Var, Var) {
        let tag = self.tag(base);
        (self.make(format!("{tag}₁")), self.make(format!("{tag}₂")))
    }
}

type Pair<'a> = (&'a Var, &'a Var);

struct PhiBuilder {
    vars: Vars,
}

impl PhiBuilder {
    fn l(&self, x: &Var) -> Fo {
        named("L".into(), &[x], Fo::P(x.clone()))
    }

    fn r(&self, x: &Var) -> Fo {
        named("R".into(), &[x], not(Fo::P(x.clone())))
    }

    fn s(&mut self, x: &Var, y: &Var) -> Fo {
        let z = self.vars.single("z");
        let body = and(less(x, y), not(exists(&z, between(x, &z, y))));
        named("S".into(), &[x, y], body)
    }

    fn set(&mut self, i: usize, x: Pair) -> Fo {
        let (x1, x2) = x;
        let body = if i == 0 {
            and_all(vec![self.l(x1), self.r(x2), self.s(x1, x2)])
        } else {
            let u = self.vars.single("u");
            let v = self.vars.single("v");
            let left = self.set(i - 1, (&u, &v));
            let right = self.set(i - 1, (&v, &u));
            let covered =
                forall(&u, implies(between(x1, &u, x2), exists(&v, and(between(x1, &v, x2), or(left, right)))));
            let (a1, a2) = self.vars.pair("a");
            let (b1, b2) = self.vars.pair("b");
            let a_in = self.member(i - 1, (&a1, &a2), x);
            let b_in = self.member(i - 1, (&b1, &b2), x);
            let differ = not(self.equal(i - 1, (&a1, &a2), (&b1, &b2)));
            let distinct = forall(
                &a1,
                forall(&a2, forall(&b1, forall(&b2, implies(and_all(vec![a_in, b_in, not(eq(&a1, &b1))]), differ)))),
            );
            and_all(vec![less(x1, x2), self.l(x1), self.r(x2), covered, distinct])
        };
        named(format!("set{}", subscript(i)), &[x1, x2], body)
    }

    fn member(&mut self, i: usize, x: Pair, y: Pair) -> Fo {
        let ((x1, x2), (y1, y2)) = (x, y);
        let (u1, u2) = self.vars.pair("u");
        let inside = and_all(vec![less(y1, x1), less(x1, x2), less(x2, y2)]);
        let set_x = self.set(i, x);
        let set_u = self.set(i, (&u1, &u2));
        let enclosing = exists(&u1, exists(&u2, and_all(vec![between(y1, &u1, x1), between(x2, &u2, y2), set_u])));
        named(format!("∈{}", subscript(i)), &[x1, x2, y1, y2], and_all(vec![inside, set_x, not(enclosing)]))
    }

    fn equal(&mut self, i: usize, x: Pair, y: Pair) -> Fo {
        let body = if i == 0 {
            Fo::Top
        } else {
            let (a1, a2) = self.vars.pair("a");
            let (b1, b2) = self.vars.pair("b");
            let a_in_x = self.member(i - 1, (&a1, &a2), x);
            let b_in_y = self.member(i - 1, (&b1, &b2), y);
            let same = self.equal(i - 1, (&a1, &a2), (&b1, &b2));
            let forth = forall2((&a1, &a2), implies(a_in_x, exists2((&b1, &b2), and(b_in_y, same))));
            let (a1, a2) = self.vars.pair("a");
            let (b1, b2) = self.vars.pair("b");
            let b_in_y = self.member(i - 1, (&b1, &b2), y);
            let a_in_x = self.member(i - 1, (&a1, &a2), x);
            let same = self.equal(i - 1, (&a1, &a2), (&b1, &b2));
            let back = forall2((&b1, &b2), implies(b_in_y, exists2((&a1, &a2), and(a_in_x, same))));
            and(forth, back)
        };
        named(format!("={}", subscript(i)), &[x.0, x.1, y.0, y.1], body)
    }
}

fn between(x: &Var, z: &Var, y: &Var) -> Fo {
    and(less(x, z), less(z, y))
}

fn le(x: &Var, y: &Var) -> Fo {
    or(less(x, y), eq(x, y))
}

fn forall2(p: Pair, f: Fo) -> Fo {
    forall(p.0, forall(p.1, f))
}

fn exists2(p: Pair, f: Fo) -> Fo {
    exists(p.0, exists(p.1, f))
}

/// `φ_n`: the whole word encodes a set of `V_{n+1}` without repeated
/// elements.
pub fn build_phi(n: usize) -> Fo {
    let mut b = PhiBuilder { vars: Vars::default() };
    let (x1, x2) = b.vars.pair("x");
    let z = b.vars.single("z");
    let spans = forall(&z, and(le(&x1, &z), le(&z, &x2)));
    let set = b.set(n, (&x1, &x2));
    exists2((&x1, &x2), and(spans, set))
}

pub fn fo_size(f: &Fo) -> usize {
    f.size()
}

/// A word seen as a structure: positions `0..length`, `P` marks `(`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordModel {
    pub length: usize,
    pub p: BTreeSet<usize>,
}

impl WordModel {
    /// `P` holds at positions carrying `marked`.
    pub fn of_word(w: &Word, marked: char) -> WordModel {
        WordModel {
            length: w.len(),
            p: w.chars().iter().enumerate().filter(|(_, &c)| c == marked).map(|(i, _)| i).collect(),
        }
    }
}

#[derive(Clone, Debug)]
enum Node {
    Top,
    P(usize),
    Less(usize, usize),
    Eq(usize, usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Exists(usize, usize),
    ForAll(usize, usize),
}

/// A closed formula prepared for repeated evaluation. Quantifier nodes are
/// memoized on the values of their free variables, so evaluation is
/// polynomial in the word length for a fixed formula.
pub struct CompiledFo {
    nodes: Vec<Node>,
    free: Vec<Vec<usize>>,
    slots: usize,
    root: usize,
}

const MAX_MEMO_VARS: usize = 16;

impl CompiledFo {
    pub fn new(f: &Fo) -> CompiledFo {
        let mut slots = HashMap::new();
        let mut c = CompiledFo { nodes: Vec::new(), free: Vec::new(), slots: 0, root: 0 };
        c.root = c.add(f, &mut slots);
        c.slots = slots.len();
        c
    }

    fn add(&mut self, f: &Fo, slots: &mut HashMap<u32, usize>) -> usize {
        let mut slot = |v: &Var| {
            let n = slots.len();
            *slots.entry(v.id).or_insert(n)
        };
        let (node, free): (Node, Vec<usize>) = match f {
            Fo::Named { body, .. } => return self.add(body, slots),
            Fo::Top => (Node::Top, vec![]),
            Fo::P(x) => {
                let x = slot(x);
                (Node::P(x), vec![x])
            }
            Fo::Less(x, y) | Fo::Eq(x, y) => {
                let (x, y) = (slot(x), slot(y));
                let node = if matches!(f, Fo::Less(..)) { Node::Less(x, y) } else { Node::Eq(x, y) };
                (node, merge(&[x], &[y]))
            }
            Fo::Not(g) => {
                let g = self.add(g, slots);
                (Node::Not(g), self.free[g].clone())
            }
            Fo::And(l, r) | Fo::Or(l, r) | Fo::Implies(l, r) => {
                let (l, r) = (self.add(l, slots), self.add(r, slots));
                let node = match f {
                    Fo::And(..) => Node::And(l, r),
                    Fo::Or(..) => Node::Or(l, r),
                    _ => Node::Implies(l, r),
                };
                (node, merge(&self.free[l], &self.free[r]))
            }
            Fo::Exists(v, g) | Fo::ForAll(v, g) => {
                let v = slot(v);
                let g = self.add(g, slots);
                let free = self.free[g].iter().copied().filter(|&x| x != v).collect();
                let node = if matches!(f, Fo::Exists(..)) { Node::Exists(v, g) } else { Node::ForAll(v, g) };
                (node, free)
            }
        };
        self.nodes.push(node);
        self.free.push(free);
        self.nodes.len() - 1
    }

    pub fn eval(&self, m: &WordModel) -> bool {
        assert!(m.length < 256, "word models are limited to 255 positions");
        let mut ev = Eval {
            c: self,
            p: (0..m.length).map(|i| m.p.contains(&i)).collect(),
            assign: vec![0; self.slots],
            memo: vec![HashMap::new(); self.nodes.len()],
        };
        ev.eval(self.root)
    }

    pub fn eval_word(&self, w: &Word, marked: char) -> bool {
        self.eval(&WordModel::of_word(w, marked))
    }
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

struct Eval<'a> {
    c: &'a CompiledFo,
    p: Vec<bool>,
    assign: Vec<u8>,
    memo: Vec<HashMap<u128, bool>>,
}

impl Eval<'_> {
    fn key(&self, node: usize) -> Option<u128> {
        let free = &self.c.free[node];
        (free.len() <= MAX_MEMO_VARS).then(|| free.iter().fold(0u128, |k, &v| (k << 8) | self.assign[v] as u128))
    }

    fn eval(&mut self, node: usize) -> bool {
        match self.c.nodes[node] {
            Node::Top => true,
            Node::P(x) => self.p[self.assign[x] as usize],
            Node::Less(x, y) => self.assign[x] < self.assign[y],
            Node::Eq(x, y) => self.assign[x] == self.assign[y],
            Node::Not(g) => !self.eval(g),
            Node::And(l, r) => self.eval(l) && self.eval(r),
            Node::Or(l, r) => self.eval(l) || self.eval(r),
            Node::Implies(l, r) => !self.eval(l) || self.eval(r),
            Node::Exists(v, g) | Node::ForAll(v, g) => {
                let key = self.key(node);
                if let Some(k) = key {
                    if let Some(&b) = self.memo[node].get(&k) {
                        return b;
                    }
                }
                let want = matches!(self.c.nodes[node], Node::Exists(..));
                let saved = self.assign[v];
                let mut result = !want;
                for pos in 0..self.p.len() {
                    self.assign[v] = pos as u8;
                    if self.eval(g) == want {
                        result = want;
                        break;
                    }
                }
                self.assign[v] = saved;
                if let Some(k) = key {
                    self.memo[node].insert(k, result);
                }
                result
            }
        }
    }
}

/// Satisfaction of a closed formula.
pub fn fo_eval(f: &Fo, m: &WordModel) -> bool {
    CompiledFo::new(f).eval(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Alphabet;
    use crate::langs::enc_language;

    #[test]
    fn phi_is_closed_and_named() {
        for n in 0..=3 {
            assert!(build_phi(n).is_closed(), "φ{n}");
        }
        let text = build_phi(0).render_with_definitions("φ₀");
        assert!(text.contains("set₀(x₁, x₂) := L(x₁) ∧ R(x₂) ∧ S(x₁, x₂)"), "{text}");
    }

    #[test]
    fn equality_zero_is_top() {
        let mut b = PhiBuilder { vars: Vars::default() };
        let (x1, x2) = b.vars.pair("x");
        let (y1, y2) = b.vars.pair("y");
        let Fo::Named { body, .. } = b.equal(0, (&x1, &x2), (&y1, &y2)) else { panic!() };
        assert_eq!(*body, Fo::Top);
    }

    #[test]
    fn sizes_grow() {
        let sizes: Vec<usize> = (0..=3).map(|n| fo_size(&build_phi(n))).collect();
        assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    }

    #[test]
    fn simple_models() {
        let mut vars = Vars::default();
        let x = vars.single("x");
        let some_p = exists(&x, Fo::P(x.clone()));
        assert!(!fo_eval(&some_p, &WordModel::of_word(&Word::from(")"), '(')));
        assert!(fo_eval(&some_p, &WordModel::of_word(&Word::from(")("), '(')));
        let phi1 = CompiledFo::new(&build_phi(1));
        assert!(phi1.eval_word(&Word::from("(())"), '('));
        assert!(!phi1.eval_word(&Word::from("(("), '('));
    }

    #[test]
    fn phi_matches_encodings_on_short_words() {
        let sigma = Alphabet::parse("()").unwrap();
        for n in 0..=2 {
            let phi = CompiledFo::new(&build_phi(n));
            let lang = enc_language(n);
            for w in sigma.words_up_to(8) {
                assert_eq!(phi.eval_word(&w, '('), lang.contains(&w), "φ{n} on {w}");
            }
        }
    }
}
