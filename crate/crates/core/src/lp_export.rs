//! Emits the two integer programs as LP-format model files for external
//! MILP solvers: the sum-objective near-shortest-path model (`nspip`) and
//! the linearized universal model with sorting variables (`unspip`). This
//! module only writes models; it never calls a solver.

use crate::error::{Error, Result};
use crate::graph::{ArcId, ArcMask, Graph};
use crate::objective::Lambda;
use crate::solvers;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

impl Rel {
    fn token(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Ge => ">=",
            Rel::Eq => "=",
        }
    }
}

/// A linear expression as an ordered list of (coefficient, variable) terms.
/// Zero-coefficient terms are dropped on push; an empty expression renders
/// as the constant 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: Vec<(i64, String)>,
}

impl LinExpr {
    pub fn push(&mut self, coeff: i64, var: impl Into<String>) {
        if coeff != 0 {
            self.terms.push((coeff, var.into()));
        }
    }

    pub fn eval(&self, assign: &impl Fn(&str) -> i64) -> i128 {
        self.terms.iter().map(|(c, v)| *c as i128 * assign(v) as i128).sum()
    }

    fn render(&self, out: &mut String, indent: &str, width: usize) {
        if self.terms.is_empty() {
            out.push_str("0");
            return;
        }
        let mut line_len = out.len() - out.rfind('\n').map_or(0, |p| p + 1);
        for (idx, (coeff, var)) in self.terms.iter().enumerate() {
            let piece = if idx == 0 {
                if *coeff < 0 {
                    format!("- {} {var}", coeff.unsigned_abs())
                } else {
                    format!("{coeff} {var}")
                }
            } else if *coeff < 0 {
                format!(" - {} {var}", coeff.unsigned_abs())
            } else {
                format!(" + {coeff} {var}")
            };
            if line_len + piece.len() > width {
                out.push('\n');
                out.push_str(indent);
                line_len = indent.len();
            }
            out.push_str(&piece);
            line_len += piece.len();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub expr: LinExpr,
    pub rel: Rel,
    pub rhs: i64,
}

impl Constraint {
    pub fn satisfied(&self, assign: &impl Fn(&str) -> i64) -> bool {
        let lhs = self.expr.eval(assign);
        match self.rel {
            Rel::Le => lhs <= self.rhs as i128,
            Rel::Ge => lhs >= self.rhs as i128,
            Rel::Eq => lhs == self.rhs as i128,
        }
    }
}

/// An integer program over binary variables, rendered to LP-format text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: LinExpr,
    pub constraints: Vec<Constraint>,
    pub binaries: Vec<String>,
    pub header: Vec<String>,
}

impl LpModel {
    /// Constraint names are unique and every referenced variable is
    /// registered as binary.
    pub fn validate(&self) -> Result<()> {
        let mut names = std::collections::HashSet::new();
        for c in &self.constraints {
            if !names.insert(c.name.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate constraint name {}", c.name)));
            }
        }
        let registered: std::collections::HashSet<&str> =
            self.binaries.iter().map(|s| s.as_str()).collect();
        if registered.len() != self.binaries.len() {
            return Err(Error::InvalidInput("duplicate variable registration".into()));
        }
        for (_, v) in self
            .objective
            .terms
            .iter()
            .chain(self.constraints.iter().flat_map(|c| c.expr.terms.iter()))
        {
            if !registered.contains(v.as_str()) {
                return Err(Error::InvalidInput(format!("unregistered variable {v}")));
            }
        }
        Ok(())
    }

    /// Deterministic LP text: ASCII, LF line endings, byte-identical for
    /// identical models.
    pub fn to_lp_text(&self) -> String {
        const WIDTH: usize = 200;
        let mut out = String::new();
        for line in &self.header {
            out.push_str("\\ ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(match self.sense {
            Sense::Minimize => "Minimize\n",
            Sense::Maximize => "Maximize\n",
        });
        out.push_str(" obj: ");
        self.objective.render(&mut out, "   ", WIDTH);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            out.push(' ');
            out.push_str(&c.name);
            out.push_str(": ");
            c.expr.render(&mut out, "   ", WIDTH);
            out.push_str(&format!(" {} {}\n", c.rel.token(), c.rhs));
        }
        out.push_str("Binary\n");
        for v in &self.binaries {
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
        out.push_str("End\n");
        out
    }
}

pub fn arc_var(g: &Graph, id: ArcId) -> String {
    let a = g.arc(id);
    format!("x_{}_{}_{id}", a.tail, a.head)
}

fn sort_var(g: &Graph, i: usize, id: ArcId) -> String {
    let a = g.arc(id);
    format!("s_{i}_{}_{}_{id}", a.tail, a.head)
}

fn lin_var(g: &Graph, i: usize, id: ArcId) -> String {
    let a = g.arc(id);
    format!("y_{i}_{}_{}_{id}", a.tail, a.head)
}

fn flow_constraints(g: &Graph) -> Vec<Constraint> {
    (1..=g.vertex_count())
        .map(|u| {
            let mut expr = LinExpr::default();
            for &aid in g.out_arcs(u) {
                expr.push(1, arc_var(g, aid));
            }
            for &aid in g.in_arcs(u) {
                expr.push(-1, arc_var(g, aid));
            }
            let rhs = if u == g.source() {
                1
            } else if u == g.sink() {
                -1
            } else {
                0
            };
            Constraint { name: format!("flow_{u}"), expr, rel: Rel::Eq, rhs }
        })
        .collect()
}

/// Sum-objective model: minimize total cost over binary arc choices subject
/// to flow conservation and a total-cost lower bound of `xi`.
pub fn nspip_model(g: &Graph, xi: i64) -> LpModel {
    let mut objective = LinExpr::default();
    for id in g.arc_ids() {
        objective.push(g.arc(id).cost, arc_var(g, id));
    }
    let mut constraints = flow_constraints(g);
    let mut lb = LinExpr::default();
    for id in g.arc_ids() {
        lb.push(g.arc(id).cost, arc_var(g, id));
    }
    constraints.push(Constraint { name: "bound_xi".into(), expr: lb, rel: Rel::Ge, rhs: xi });
    let binaries = g.arc_ids().map(|id| arc_var(g, id)).collect();
    let header = vec![
        "nspip model: minimize total arc cost over binary s-t flows".to_string(),
        format!(
            "graph: n={} m={} s={} t={}; lower bound xi={xi} on the total cost",
            g.vertex_count(),
            g.arc_count(),
            g.source(),
            g.sink()
        ),
    ];
    let model = LpModel { sense: Sense::Minimize, objective, constraints, binaries, header };
    debug_assert!(model.validate().is_ok());
    model
}

pub fn emit_nspip(g: &Graph, xi: i64) -> String {
    nspip_model(g, xi).to_lp_text()
}

/// Subtour constraints are enumerated for every vertex subset, so the model
/// is gated to small instances.
pub const UNSPIP_MAX_N: usize = 12;

/// Universal-objective model with sorting variables s_{i,uv}, linearization
/// variables y_{i,uv} = s_{i,uv} * x_{uv}, subtour elimination over every
/// vertex subset of size >= 2, and the value cap f* + xi.
pub fn unspip_model(g: &Graph, lam: &Lambda, xi: i64) -> Result<LpModel> {
    let n = g.vertex_count();
    let m = g.arc_count();
    lam.validate(n)?;
    if n > UNSPIP_MAX_N {
        return Err(Error::SizeGate(format!(
            "unspip enumerates all vertex subsets; gated at n <= {UNSPIP_MAX_N} (got n={n})"
        )));
    }
    let mask = ArcMask::new(g);
    let opt = solvers::solve(g, &mask, g.source(), g.sink(), lam)?;
    let Some(f_star) = opt.value else {
        return Err(Error::InvalidInput("no s-t path, so the value cap is undefined".into()));
    };
    let cap = f_star.checked_add(xi).ok_or(Error::Overflow)?;

    let positions = 1..=n - 1;
    let mut objective = LinExpr::default();
    for i in positions.clone() {
        let li = lam.weight(i);
        for id in g.arc_ids() {
            let coeff = li.checked_mul(g.arc(id).cost).ok_or(Error::Overflow)?;
            objective.push(coeff, lin_var(g, i, id));
        }
    }

    let mut constraints = flow_constraints(g);

    // Subtour elimination for every S subseteq V with |S| >= 2, in ascending
    // bitmask order.
    let mut sub_idx = 0usize;
    for mask_bits in 0u32..(1u32 << n) {
        if mask_bits.count_ones() < 2 {
            continue;
        }
        sub_idx += 1;
        let mut expr = LinExpr::default();
        for id in g.arc_ids() {
            let a = g.arc(id);
            let tail_in = mask_bits & (1 << (a.tail - 1)) != 0;
            let head_in = mask_bits & (1 << (a.head - 1)) != 0;
            if tail_in && head_in {
                expr.push(1, arc_var(g, id));
            }
        }
        constraints.push(Constraint {
            name: format!("subtour_{sub_idx}"),
            expr,
            rel: Rel::Le,
            rhs: mask_bits.count_ones() as i64 - 1,
        });
    }

    // Each arc occupies exactly one position, each position exactly one arc.
    for id in g.arc_ids() {
        let mut expr = LinExpr::default();
        for i in positions.clone() {
            expr.push(1, sort_var(g, i, id));
        }
        constraints.push(Constraint {
            name: format!("assign_arc_{id}"),
            expr,
            rel: Rel::Eq,
            rhs: 1,
        });
    }
    for i in positions.clone() {
        let mut expr = LinExpr::default();
        for id in g.arc_ids() {
            expr.push(1, sort_var(g, i, id));
        }
        constraints.push(Constraint {
            name: format!("assign_pos_{i}"),
            expr,
            rel: Rel::Eq,
            rhs: 1,
        });
    }

    // Sorted order: the cost claimed at position i dominates position i+1,
    // written over the linearization variables.
    for i in 1..=n.saturating_sub(2) {
        let mut expr = LinExpr::default();
        for id in g.arc_ids() {
            expr.push(g.arc(id).cost, lin_var(g, i, id));
        }
        for id in g.arc_ids() {
            expr.push(-g.arc(id).cost, lin_var(g, i + 1, id));
        }
        constraints.push(Constraint { name: format!("sort_{i}"), expr, rel: Rel::Ge, rhs: 0 });
    }

    // y = s * x, linearized.
    for i in positions.clone() {
        for id in g.arc_ids() {
            let mut expr = LinExpr::default();
            expr.push(1, lin_var(g, i, id));
            expr.push(-1, sort_var(g, i, id));
            constraints.push(Constraint {
                name: format!("lin_le_s_{i}_{id}"),
                expr,
                rel: Rel::Le,
                rhs: 0,
            });
        }
    }
    for i in positions.clone() {
        for id in g.arc_ids() {
            let mut expr = LinExpr::default();
            expr.push(1, lin_var(g, i, id));
            expr.push(-1, arc_var(g, id));
            constraints.push(Constraint {
                name: format!("lin_le_x_{i}_{id}"),
                expr,
                rel: Rel::Le,
                rhs: 0,
            });
        }
    }
    for i in positions.clone() {
        for id in g.arc_ids() {
            let mut expr = LinExpr::default();
            expr.push(1, sort_var(g, i, id));
            expr.push(1, arc_var(g, id));
            expr.push(-1, lin_var(g, i, id));
            constraints.push(Constraint {
                name: format!("lin_ge_{i}_{id}"),
                expr,
                rel: Rel::Le,
                rhs: 1,
            });
        }
    }

    let mut value_expr = LinExpr::default();
    for i in positions.clone() {
        let li = lam.weight(i);
        for id in g.arc_ids() {
            let coeff = li.checked_mul(g.arc(id).cost).ok_or(Error::Overflow)?;
            value_expr.push(coeff, lin_var(g, i, id));
        }
    }
    constraints.push(Constraint {
        name: "bound_xi".into(),
        expr: value_expr,
        rel: Rel::Le,
        rhs: cap,
    });

    let mut binaries: Vec<String> = g.arc_ids().map(|id| arc_var(g, id)).collect();
    for i in positions.clone() {
        for id in g.arc_ids() {
            binaries.push(sort_var(g, i, id));
        }
    }
    for i in positions {
        for id in g.arc_ids() {
            binaries.push(lin_var(g, i, id));
        }
    }

    let mut header = vec![
        "unspip model: universal objective with sorting variables, linearized".to_string(),
        format!(
            "graph: n={n} m={m} s={} t={}; lambda={lam}; f*={f_star}; xi={xi}",
            g.source(),
            g.sink()
        ),
        format!(
            "value cap: objective <= f* + xi = {cap} (the nspip model instead uses an absolute lower bound xi)"
        ),
        "note: emitted as a maximization even though the complete-set loop seeks minimum values at or above a target".to_string(),
    ];
    if m < n - 1 {
        header.push(format!(
            "warning: the position assignments need one arc per position (m >= n-1); this instance has m={m} < n-1={}",
            n - 1
        ));
    }

    let model = LpModel { sense: Sense::Maximize, objective, constraints, binaries, header };
    model.validate()?;
    Ok(model)
}

pub fn emit_unspip(g: &Graph, lam: &Lambda, xi: i64) -> Result<String> {
    Ok(unspip_model(g, lam, xi)?.to_lp_text())
}
