//! Sparse multivariate polynomials over F_q and a deterministic
//! exhaustive solver: linear elimination plus branch-and-propagate with
//! an exact node budget.

use crate::field::{FieldCtx, FieldElem};
use std::cmp::Ordering;
use std::fmt;
use std::rc::Rc;

/// Default search budget in tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// A reconstructed point failed re-verification against the original
    /// system; indicates an internal bug, never user error.
    InternalCheckFailed,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::InternalCheckFailed => {
                write!(f, "internal invariant failure: solution re-verification failed")
            }
        }
    }
}

impl std::error::Error for SolveError {}

/// Monomial as sorted (variable, exponent) pairs with positive
/// exponents; monomials in at most two variables live inline, which
/// keeps the solver's hot substitution loop off the heap.
/// Ordered graded-lexicographically: total degree first, then exponent
/// vectors compared position by position (a higher exponent on an
/// earlier variable wins).
#[derive(Debug, Clone)]
pub struct Monomial {
    len: u8,
    inline: [(u32, u32); 2],
    spill: Option<Box<[(u32, u32)]>>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { len: 0, inline: [(0, 0); 2], spill: None }
    }

    pub fn var(v: usize) -> Monomial {
        Monomial { len: 1, inline: [(v as u32, 1), (0, 0)], spill: None }
    }

    fn from_sorted(pairs: &[(u32, u32)]) -> Monomial {
        if pairs.len() <= 2 {
            let mut inline = [(0, 0); 2];
            inline[..pairs.len()].copy_from_slice(pairs);
            Monomial { len: pairs.len() as u8, inline, spill: None }
        } else {
            Monomial { len: u8::MAX, inline: [(0, 0); 2], spill: Some(pairs.into()) }
        }
    }

    pub fn from_pairs(pairs: Vec<(usize, u32)>) -> Monomial {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| (v as u32, e))
            .collect();
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        Monomial::from_sorted(&out)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        match &self.spill {
            Some(b) => b,
            None => &self.inline[..self.len as usize],
        }
    }

    pub fn degree(&self) -> u32 {
        self.pairs().iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.pairs().is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let a = self.pairs();
        let b = other.pairs();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 == b[j].0 {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            } else if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial::from_sorted(&out)
    }

    pub fn exponent_of(&self, v: usize) -> u32 {
        self.pairs()
            .iter()
            .find(|&&(w, _)| w as usize == v)
            .map_or(0, |&(_, e)| e)
    }

    /// The monomial with variable v removed, and the removed exponent.
    fn without(&self, v: usize) -> (Monomial, u32) {
        let e = self.exponent_of(v);
        if e == 0 {
            return (self.clone(), 0);
        }
        let rest: Vec<(u32, u32)> = self
            .pairs()
            .iter()
            .copied()
            .filter(|&(w, _)| w as usize != v)
            .collect();
        (Monomial::from_sorted(&rest), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // lexicographic on dense exponent vectors: walk merged vars
            let a = self.pairs();
            let b = other.pairs();
            let mut i = 0;
            let mut j = 0;
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        // earlier variable present only on one side: that
                        // side has the larger exponent there
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.pairs() == other.pairs()
    }
}

impl Eq for Monomial {}

impl std::hash::Hash for Monomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.pairs().hash(state)
    }
}

/// Sparse multivariate polynomial; no zero coefficients stored, terms
/// held ascending in the monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, FieldElem)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn var(nvars: usize, v: usize) -> MultiPoly {
        assert!(v < nvars);
        MultiPoly { nvars, terms: vec![(Monomial::var(v), FieldElem::ONE)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::ZERO),
            1 => {
                let (m, c) = &self.terms[0];
                if m.is_one() {
                    Some(*c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        // terms are graded: the last one has the maximal degree
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn add_term(&mut self, ctx: &FieldCtx, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(tm, _)| tm.cmp(&m)) {
            Ok(pos) => {
                let s = ctx.add(self.terms[pos].1, c);
                if s.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = s;
                }
            }
            Err(pos) => {
                self.terms.insert(pos, (m, c));
            }
        }
    }

    /// Merge of two ascending term lists, with the right side scaled.
    fn merged(&self, ctx: &FieldCtx, other: &[(Monomial, FieldElem)], factor: FieldElem) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.len() {
            match self.terms[i].0.cmp(&other[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = ctx.mul(other[j].1, factor);
                    if !c.is_zero() {
                        out.push((other[j].0.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ctx.add(self.terms[i].1, ctx.mul(other[j].1, factor));
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other[j..] {
            let c = ctx.mul(*c, factor);
            if !c.is_zero() {
                out.push((m.clone(), c));
            }
        }
        MultiPoly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &MultiPoly) -> MultiPoly {
        self.merged(ctx, &other.terms, FieldElem::ONE)
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &MultiPoly) -> MultiPoly {
        self.merged(ctx, &other.terms, ctx.neg(FieldElem::ONE))
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), ctx.mul(*a, c)))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ctx, ma.mul(mb), ctx.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn eval(&self, ctx: &FieldCtx, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElem::ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for &(v, e) in m.pairs() {
                t = ctx.mul(t, ctx.pow(point[v as usize], e as u64));
            }
            acc = ctx.add(acc, t);
        }
        acc
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent_of(v) > 0)
    }

    /// Exact substitution x_v := value, where value is any polynomial not
    /// involving x_v.
    pub fn substitute(&self, ctx: &FieldCtx, v: usize, value: &MultiPoly) -> MultiPoly {
        assert!(v < self.nvars);
        if !self.contains_var(v) {
            return self.clone();
        }
        // terms untouched by v stay an ascending run; transformed terms
        // are collected, sorted and merged in
        let mut kept: Vec<(Monomial, FieldElem)> = Vec::with_capacity(self.terms.len());
        let mut moved: Vec<(Monomial, FieldElem)> = Vec::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            if e == 0 {
                kept.push((m.clone(), *c));
                continue;
            }
            if e == 1 {
                for (pm, pc) in &value.terms {
                    moved.push((pm.mul(&rest), ctx.mul(*pc, *c)));
                }
                continue;
            }
            // value^e times the rest of the term
            let mut powed = MultiPoly::constant(self.nvars, FieldElem::ONE);
            for _ in 0..e {
                powed = powed.mul(ctx, value);
            }
            for (pm, pc) in &powed.terms {
                moved.push((pm.mul(&rest), ctx.mul(*pc, *c)));
            }
        }
        moved.sort_by(|a, b| a.0.cmp(&b.0));
        // collapse duplicates inside `moved`
        let mut collapsed: Vec<(Monomial, FieldElem)> = Vec::with_capacity(moved.len());
        for (m, c) in moved {
            match collapsed.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ctx.add(*lc, c),
                _ => collapsed.push((m, c)),
            }
        }
        collapsed.retain(|(_, c)| !c.is_zero());
        let base = MultiPoly { nvars: self.nvars, terms: kept };
        base.merged(ctx, &collapsed, FieldElem::ONE)
    }

    pub fn substitute_const(&self, ctx: &FieldCtx, v: usize, value: FieldElem) -> MultiPoly {
        self.substitute(ctx, v, &MultiPoly::constant(self.nvars, value))
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        let mut seen = vec![false; self.nvars];
        self.terms
            .iter()
            .flat_map(|(m, _)| m.pairs().iter().map(|&(v, _)| v as usize))
            .filter(move |&v| {
                if seen[v] {
                    false
                } else {
                    seen[v] = true;
                    true
                }
            })
    }

    /// Textual form like `2*x_3*x_1 + x_0 + 1` with custom variable names.
    pub fn format_with(&self, ctx: &FieldCtx, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let cs = ctx.format_elem(*c);
            if cs != "1" || m.is_one() {
                if cs.contains('+') {
                    factors.push(format!("({})", cs));
                } else {
                    factors.push(cs);
                }
            }
            for &(v, e) in m.pairs() {
                if e == 1 {
                    factors.push(name(v as usize));
                } else {
                    factors.push(format!("{}^{}", name(v as usize), e));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        self.format_with(ctx, &|v| format!("x{}", v))
    }
}

/// A system of polynomial equations, each understood as `= 0`.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub ctx: FieldCtx,
    pub nvars: usize,
    pub equations: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(ctx: &FieldCtx, nvars: usize, equations: Vec<MultiPoly>) -> PolySystem {
        assert!(equations.iter().all(|e| e.nvars() == nvars));
        PolySystem { ctx: ctx.clone(), nvars, equations }
    }
}

/// Outcome of the linear elimination pass: variables eliminated in
/// order, each with the expression it was solved to, plus whatever
/// equations remain. Elimination expressions may involve variables that
/// were eliminated later.
#[derive(Clone, Debug)]
pub struct LinearReduction {
    pub eliminations: Vec<(usize, MultiPoly)>,
    pub remaining: Vec<MultiPoly>,
    pub inconsistent: bool,
}

impl LinearReduction {
    /// Constant-valued eliminations, as (var, value) pairs.
    pub fn constant_assignments(&self) -> Vec<(usize, FieldElem)> {
        self.eliminations
            .iter()
            .filter_map(|(v, e)| e.constant_value().map(|c| (*v, c)))
            .collect()
    }
}

/// Repeatedly selects the first degree-1 equation (in list order), solves
/// it for its least-index variable and substitutes everywhere;
/// contradictions (nonzero constant = 0) are reported, not raised.
pub fn linear_reduce(sys: &PolySystem) -> LinearReduction {
    let mut eqs: Vec<Rc<MultiPoly>> =
        sys.equations.iter().map(|e| Rc::new(e.clone())).collect();
    let mut elims = Vec::new();
    let inconsistent = !propagate(&sys.ctx, &mut eqs, &mut elims);
    let eqs: Vec<MultiPoly> = eqs.into_iter().map(|e| (*e).clone()).collect();
    // back-substitute: an elimination expression may mention variables
    // that were themselves eliminated later; fold resolved constants in
    let mut consts: Vec<Option<FieldElem>> = vec![None; sys.nvars];
    for idx in (0..elims.len()).rev() {
        let (v, mut expr) = elims[idx].clone();
        for w in expr.variables().collect::<Vec<_>>() {
            if let Some(c) = consts[w] {
                expr = expr.substitute_const(&sys.ctx, w, c);
            }
        }
        if let Some(c) = expr.constant_value() {
            consts[v] = Some(c);
        }
        elims[idx] = (v, expr);
    }
    LinearReduction { eliminations: elims, remaining: eqs, inconsistent }
}

/// Shared propagation core; returns false on contradiction. Equations
/// are reference-counted so untouched ones are shared across the search
/// tree instead of cloned.
fn propagate(
    ctx: &FieldCtx,
    eqs: &mut Vec<Rc<MultiPoly>>,
    elims: &mut Vec<(usize, MultiPoly)>,
) -> bool {
    loop {
        eqs.retain(|e| !e.is_zero());
        if let Some(c) = eqs.iter().find_map(|e| e.constant_value()) {
            if !c.is_zero() {
                return false;
            }
        }
        let Some(pos) = eqs
            .iter()
            .position(|e| e.degree() == Some(1) && e.constant_value().is_none())
        else {
            return true;
        };
        let eq = eqs.remove(pos);
        // least-index variable with nonzero coefficient
        let v = eq.variables().min().expect("degree-1 equation has a variable");
        let coef = eq
            .terms()
            .find(|(m, _)| m.pairs() == [(v as u32, 1)])
            .map(|(_, &c)| c)
            .expect("linear term present");
        // x_v = -coef^{-1} * (eq - coef*x_v)
        let inv = ctx.inv(coef).expect("nonzero coefficient");
        let mut rest = (*eq).clone();
        rest.add_term(ctx, Monomial::var(v), ctx.neg(coef));
        let expr = rest.scale(ctx, ctx.neg(inv));
        for e in eqs.iter_mut() {
            if e.contains_var(v) {
                *e = Rc::new(e.substitute(ctx, v, &expr));
            }
        }
        elims.push((v, expr));
    }
}

/// All solutions of a system, found by exhaustive depth-first
/// branch-and-propagate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    /// False iff the node budget ran out before the search finished.
    pub complete: bool,
    /// Deduplicated, canonically sorted assignments.
    pub points: Vec<Vec<FieldElem>>,
    /// Search nodes charged.
    pub nodes: u64,
}

impl SolutionSet {
    /// JSON dump: points as arrays of canonical element literals.
    pub fn to_json(&self, ctx: &FieldCtx) -> crate::report::Json {
        use crate::report::Json;
        Json::obj(vec![
            ("complete", self.complete.into()),
            ("nodes", self.nodes.into()),
            (
                "points",
                Json::Arr(
                    self.points
                        .iter()
                        .map(|p| Json::strs(p.iter().map(|&e| ctx.format_elem(e))))
                        .collect(),
                ),
            ),
        ])
    }
}

struct Search<'a> {
    ctx: &'a FieldCtx,
    nvars: usize,
    budget: u64,
    nodes: u64,
    truncated: bool,
    points: Vec<Vec<FieldElem>>,
}

impl<'a> Search<'a> {
    fn charge(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.truncated = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn explore(&mut self, mut eqs: Vec<Rc<MultiPoly>>, elims: &mut Vec<(usize, MultiPoly)>) {
        if !self.charge() {
            return;
        }
        let depth0 = elims.len();
        if !propagate(self.ctx, &mut eqs, elims) {
            elims.truncate(depth0);
            return;
        }
        if eqs.is_empty() {
            self.enumerate_completions(elims);
            elims.truncate(depth0);
            return;
        }
        // branch on the least-index variable occurring in any equation of
        // minimal (degree, term count)
        let key = |e: &MultiPoly| (e.degree().unwrap(), e.nterms());
        let min_key = eqs.iter().map(|e| key(e)).min().unwrap();
        let v = eqs
            .iter()
            .filter(|e| key(e) == min_key)
            .flat_map(|e| e.variables())
            .min()
            .expect("nonconstant equation has variables");
        let depth1 = elims.len();
        for code in 0..self.ctx.q() {
            let val = self.ctx.elem(code);
            let next: Vec<Rc<MultiPoly>> = eqs
                .iter()
                .map(|e| {
                    if e.contains_var(v) {
                        Rc::new(e.substitute_const(self.ctx, v, val))
                    } else {
                        Rc::clone(e)
                    }
                })
                .collect();
            elims.push((v, MultiPoly::constant(self.nvars, val)));
            self.explore(next, elims);
            elims.truncate(depth1);
            if self.truncated {
                break;
            }
        }
        elims.truncate(depth0);
    }

    /// No equations left: every assignment of the untouched variables
    /// extends to a solution; resolve the elimination stack for each.
    fn enumerate_completions(&mut self, elims: &[(usize, MultiPoly)]) {
        let mut fixed = vec![false; self.nvars];
        for &(v, _) in elims {
            fixed[v] = true;
        }
        let free: Vec<usize> = (0..self.nvars).filter(|&v| !fixed[v]).collect();
        let q = self.ctx.q();
        let total = (q as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
        let mut idx: u128 = 0;
        while idx < total {
            if !self.charge() {
                return;
            }
            let mut point = vec![FieldElem::ZERO; self.nvars];
            // canonical order: earlier free variables are more significant
            let mut rem = idx;
            for &v in free.iter().rev() {
                point[v] = self.ctx.elem((rem % q as u128) as u64);
                rem /= q as u128;
            }
            // resolve eliminated variables, most recent first
            for (v, expr) in elims.iter().rev() {
                point[*v] = expr.eval(self.ctx, &point);
            }
            self.points.push(point);
            idx += 1;
        }
    }
}

/// Depth-first enumeration of every solution within the node budget.
/// Deterministic: fixed branch rule (least-index variable in a
/// minimal-degree, minimal-size equation; field elements in code order),
/// canonically sorted output, exact node accounting.
pub fn solve_all(sys: &PolySystem, budget: u64) -> Result<SolutionSet, SolveError> {
    assert!(budget >= 1, "budget must be at least 1");
    let mut search = Search {
        ctx: &sys.ctx,
        nvars: sys.nvars,
        budget,
        nodes: 0,
        truncated: false,
        points: Vec::new(),
    };
    let mut elims = Vec::new();
    let eqs: Vec<Rc<MultiPoly>> = sys.equations.iter().map(|e| Rc::new(e.clone())).collect();
    search.explore(eqs, &mut elims);
    let mut points = search.points;
    points.sort();
    points.dedup();
    // re-verify every point against the original equations
    for p in &points {
        for e in &sys.equations {
            if !e.eval(&sys.ctx, p).is_zero() {
                return Err(SolveError::InternalCheckFailed);
            }
        }
    }
    Ok(SolutionSet { complete: !search.truncated, points, nodes: search.nodes })
}
