//! The universal objective: a weight vector dotted with a path's sorted arc
//! costs. Family forms (sum, bottleneck, k-sum, k-max) evaluate without
//! materializing length-(n-1) vectors; the near-shortest bound is kept as an
//! exact rational and compared by integer cross-multiplication.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path};

/// Universal weight vector, stored as a family tag where possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lambda {
    /// (1,...,1): total path cost.
    Sum,
    /// (1,0,...,0): largest arc cost.
    Bottleneck,
    /// (1,...,1,0,...,0) with k ones: sum of the k largest arc costs.
    KSum(usize),
    /// (0,...,0,1,0,...,0) with the 1 at position k: k-th largest arc cost.
    KMax(usize),
    /// Arbitrary integer weights of length n-1. Entries may be negative.
    Explicit(Vec<i64>),
}

impl Lambda {
    /// Checks k ranges and explicit-vector length against a graph of `n`
    /// vertices.
    pub fn validate(&self, n: usize) -> Result<()> {
        let max = n.saturating_sub(1);
        match self {
            Lambda::Sum | Lambda::Bottleneck => Ok(()),
            Lambda::KSum(k) | Lambda::KMax(k) => {
                if *k >= 1 && *k <= max {
                    Ok(())
                } else {
                    Err(Error::Lambda(format!("k={k} outside 1..={max}")))
                }
            }
            Lambda::Explicit(w) => {
                if w.len() == max {
                    Ok(())
                } else {
                    Err(Error::Lambda(format!(
                        "explicit vector has length {}, expected {max}",
                        w.len()
                    )))
                }
            }
        }
    }

    /// True iff every implied entry is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        match self {
            Lambda::Explicit(w) => w.iter().all(|&x| x >= 0),
            _ => true,
        }
    }

    /// Weight at 1-based position `i` of the implied vector.
    pub fn weight(&self, i: usize) -> i64 {
        match self {
            Lambda::Sum => 1,
            Lambda::Bottleneck => (i == 1) as i64,
            Lambda::KSum(k) => (i <= *k) as i64,
            Lambda::KMax(k) => (i == *k) as i64,
            Lambda::Explicit(w) => w[i - 1],
        }
    }

    /// The implied weight vector of length n-1.
    pub fn to_explicit(&self, n: usize) -> Vec<i64> {
        (1..n).map(|i| self.weight(i)).collect()
    }
}

impl std::fmt::Display for Lambda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lambda::Sum => write!(f, "sum"),
            Lambda::Bottleneck => write!(f, "bottleneck"),
            Lambda::KSum(k) => write!(f, "ksum:{k}"),
            Lambda::KMax(k) => write!(f, "kmax:{k}"),
            Lambda::Explicit(w) => {
                write!(f, "vec:")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses a lambda spec: `sum`, `bottleneck`, `ksum:<k>`, `kmax:<k>`, or
/// `vec:<w1,...,w_{n-1}>`.
pub fn parse_lambda(spec: &str, n: usize) -> Result<Lambda> {
    let lam = match spec {
        "sum" => Lambda::Sum,
        "bottleneck" => Lambda::Bottleneck,
        _ => {
            if let Some(k) = spec.strip_prefix("ksum:") {
                let k: usize =
                    k.parse().map_err(|_| Error::Lambda(format!("bad k `{k}`")))?;
                Lambda::KSum(k)
            } else if let Some(k) = spec.strip_prefix("kmax:") {
                let k: usize =
                    k.parse().map_err(|_| Error::Lambda(format!("bad k `{k}`")))?;
                Lambda::KMax(k)
            } else if let Some(ws) = spec.strip_prefix("vec:") {
                let weights = ws
                    .split(',')
                    .map(|w| w.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Lambda(format!("bad vector `{ws}`")))?;
                Lambda::Explicit(weights)
            } else {
                return Err(Error::Lambda(format!("unknown family `{spec}`")));
            }
        }
    };
    lam.validate(n)?;
    Ok(lam)
}

/// Parses a rational given as `num/den` or a bare integer.
pub fn parse_ratio(s: &str) -> Result<Rational64> {
    let bad = || Error::InvalidInput(format!("bad rational `{s}`"));
    match s.split_once('/') {
        None => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational64::from_integer(v))
        }
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(num, den))
        }
    }
}

/// Arc costs of `p` sorted descending and zero-padded to length n-1.
pub fn sorted_cost_vector(p: &Path, g: &Graph) -> Vec<i64> {
    let mut costs = p.arc_costs(g);
    costs.sort_unstable_by(|a, b| b.cmp(a));
    costs.resize(g.vertex_count() - 1, 0);
    costs
}

/// f_lambda(p): the weight vector dotted with the sorted cost vector.
/// Family forms avoid materializing the vector.
pub fn universal_value(p: &Path, lam: &Lambda, g: &Graph) -> Result<i64> {
    value_of_costs(lam, p.arc_costs(g), g.vertex_count())
}

/// Evaluates f_lambda over a bag of arc costs; `costs` is consumed and may
/// be reordered.
pub(crate) fn value_of_costs(lam: &Lambda, mut costs: Vec<i64>, n: usize) -> Result<i64> {
    match lam {
        Lambda::Sum => {
            let mut acc: i64 = 0;
            for &c in &costs {
                acc = acc.checked_add(c).ok_or(Error::Overflow)?;
            }
            Ok(acc)
        }
        Lambda::Bottleneck => Ok(costs.into_iter().max().unwrap_or(0)),
        Lambda::KSum(k) => {
            costs.sort_unstable_by(|a, b| b.cmp(a));
            let mut acc: i64 = 0;
            for &c in costs.iter().take(*k) {
                acc = acc.checked_add(c).ok_or(Error::Overflow)?;
            }
            Ok(acc)
        }
        Lambda::KMax(k) => {
            costs.sort_unstable_by(|a, b| b.cmp(a));
            Ok(costs.get(*k - 1).copied().unwrap_or(0))
        }
        Lambda::Explicit(w) => {
            costs.sort_unstable_by(|a, b| b.cmp(a));
            costs.resize(n - 1, 0);
            debug_assert_eq!(w.len(), costs.len());
            let mut acc: i128 = 0;
            for (wi, ci) in w.iter().zip(&costs) {
                acc += (*wi as i128) * (*ci as i128);
            }
            i64::try_from(acc).map_err(|_| Error::Overflow)
        }
    }
}

/// The near-shortest bound B = (1 + eps) * f_star, kept exact. All
/// comparisons cross-multiply in 128-bit integers; nothing is ever rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub f_star: i64,
    pub eps_num: i64,
    pub eps_den: i64,
}

impl Bound {
    /// `eps` must be nonnegative.
    pub fn new(f_star: i64, eps: Rational64) -> Result<Bound> {
        if eps < Rational64::from_integer(0) {
            return Err(Error::InvalidInput(format!("epsilon {eps} is negative")));
        }
        Ok(Bound { f_star, eps_num: *eps.numer(), eps_den: *eps.denom() })
    }

    /// Like `new`, but permits negative eps; used only where a caller probes
    /// degenerate bounds deliberately.
    pub fn new_unchecked(f_star: i64, eps: Rational64) -> Bound {
        Bound { f_star, eps_num: *eps.numer(), eps_den: *eps.denom() }
    }

    /// value <= (1 + eps) * f_star, exactly.
    pub fn admits(&self, value: i64) -> bool {
        let lhs = value as i128 * self.eps_den as i128;
        let rhs = self.f_star as i128 * (self.eps_den as i128 + self.eps_num as i128);
        lhs <= rhs
    }

    /// value < (1 + eps) * f_star, exactly.
    pub fn admits_strict(&self, value: i64) -> bool {
        let lhs = value as i128 * self.eps_den as i128;
        let rhs = self.f_star as i128 * (self.eps_den as i128 + self.eps_num as i128);
        lhs < rhs
    }

    /// floor(B), rounding toward negative infinity.
    pub fn floor(&self) -> i64 {
        let num = self.f_star as i128 * (self.eps_den as i128 + self.eps_num as i128);
        num.div_euclid(self.eps_den as i128) as i64
    }
}

/// Decides whether `value` is within the bound; the comparison is `<=`.
pub fn within_bound(value: i64, b: &Bound) -> bool {
    b.admits(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    const FIG1: &str = "p unssp 5 6\ns 1\nt 5\n\
        a 1 2 1\na 2 3 6\na 2 4 4\na 4 3 3\na 3 5 2\na 4 5 5\n";

    fn fig1() -> Graph {
        parse_graph(FIG1).unwrap()
    }

    #[test]
    fn sorted_vectors() {
        let g = fig1();
        let p = Path::from_arcs(&g, 1, vec![1, 3, 4, 5]).unwrap(); // (s,a,c,b,t)
        assert_eq!(sorted_cost_vector(&p, &g), vec![4, 3, 2, 1]);
        let p = Path::from_arcs(&g, 1, vec![1, 2, 5]).unwrap(); // (s,a,b,t)
        assert_eq!(sorted_cost_vector(&p, &g), vec![6, 2, 1, 0]);
        // single arc of cost 7 in a 5-vertex graph pads with zeros
        let g7 = parse_graph("p unssp 5 1\ns 1\nt 2\na 1 2 7\n").unwrap();
        let p = Path::from_arcs(&g7, 1, vec![1]).unwrap();
        assert_eq!(sorted_cost_vector(&p, &g7), vec![7, 0, 0, 0]);
    }

    #[test]
    fn universal_values_on_example() {
        let g = fig1();
        let sabt = Path::from_arcs(&g, 1, vec![1, 2, 5]).unwrap();
        let sact = Path::from_arcs(&g, 1, vec![1, 3, 6]).unwrap();
        let sacbt = Path::from_arcs(&g, 1, vec![1, 3, 4, 5]).unwrap();
        assert_eq!(universal_value(&sabt, &Lambda::KMax(2), &g).unwrap(), 2);
        assert_eq!(universal_value(&sact, &Lambda::KMax(2), &g).unwrap(), 4);
        assert_eq!(universal_value(&sacbt, &Lambda::Sum, &g).unwrap(), 10);
        let zero = Lambda::Explicit(vec![0, 0, 0, 0]);
        assert_eq!(universal_value(&sacbt, &zero, &g).unwrap(), 0);
    }

    #[test]
    fn kmax_shorter_than_k_is_zero() {
        let g = parse_graph("p unssp 5 1\ns 1\nt 2\na 1 2 7\n").unwrap();
        let p = Path::from_arcs(&g, 1, vec![1]).unwrap();
        assert_eq!(universal_value(&p, &Lambda::KMax(2), &g).unwrap(), 0);
        assert_eq!(universal_value(&p, &Lambda::KMax(1), &g).unwrap(), 7);
    }

    #[test]
    fn bound_comparisons() {
        // f* = 2, eps = 1/2 -> B = 3
        let b = Bound::new(2, Rational64::new(1, 2)).unwrap();
        assert!(within_bound(3, &b));
        assert!(!within_bound(4, &b));
        assert!(within_bound(2, &b));
        for eps in [Rational64::new(0, 1), Rational64::new(7, 3)] {
            let b = Bound::new(5, eps).unwrap();
            assert!(b.admits(5));
        }
        assert_eq!(Bound::new(2, Rational64::new(1, 2)).unwrap().floor(), 3);
        assert_eq!(Bound::new(9, Rational64::new(1, 2)).unwrap().floor(), 13);
        // negative optimum floors toward negative infinity
        let nb = Bound::new_unchecked(-3, Rational64::new(1, 2));
        assert_eq!(nb.floor(), -5);
        assert!(Bound::new(1, Rational64::new(-1, 2)).is_err());
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda("kmax:2", 5).unwrap(), Lambda::KMax(2));
        assert_eq!(parse_lambda("ksum:1", 5).unwrap(), Lambda::KSum(1));
        assert_eq!(parse_lambda("sum", 5).unwrap(), Lambda::Sum);
        assert_eq!(parse_lambda("bottleneck", 5).unwrap(), Lambda::Bottleneck);
        assert_eq!(
            parse_lambda("vec:1,1,1,1", 5).unwrap(),
            Lambda::Explicit(vec![1, 1, 1, 1])
        );
        assert!(parse_lambda("kmax:0", 5).is_err());
        assert!(parse_lambda("kmax:5", 5).is_err());
        assert!(parse_lambda("vec:1,2", 5).is_err());
        assert!(parse_lambda("median", 5).is_err());
        assert_eq!(parse_lambda("kmax:2", 5).unwrap().to_explicit(5), vec![0, 1, 0, 0]);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("1/2").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_ratio("3").unwrap(), Rational64::from_integer(3));
        assert_eq!(parse_ratio("15/1").unwrap(), Rational64::from_integer(15));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn explicit_agrees_with_families() {
        let g = fig1();
        let paths = [
            Path::from_arcs(&g, 1, vec![1, 2, 5]).unwrap(),
            Path::from_arcs(&g, 1, vec![1, 3, 6]).unwrap(),
            Path::from_arcs(&g, 1, vec![1, 3, 4, 5]).unwrap(),
            Path::trivial(2),
        ];
        let fams = [
            Lambda::Sum,
            Lambda::Bottleneck,
            Lambda::KSum(1),
            Lambda::KSum(2),
            Lambda::KSum(4),
            Lambda::KMax(1),
            Lambda::KMax(2),
            Lambda::KMax(4),
        ];
        for lam in &fams {
            let exp = Lambda::Explicit(lam.to_explicit(5));
            for p in &paths {
                assert_eq!(
                    universal_value(p, lam, &g).unwrap(),
                    universal_value(p, &exp, &g).unwrap(),
                    "family {lam:?} disagrees with explicit form on {p:?}"
                );
            }
        }
        // ksum:1 and bottleneck coincide
        for p in &paths {
            assert_eq!(
                universal_value(p, &Lambda::KSum(1), &g).unwrap(),
                universal_value(p, &Lambda::Bottleneck, &g).unwrap()
            );
        }
        // vec:1,1,1,1 behaves like sum
        let ones = Lambda::Explicit(vec![1; 4]);
        for p in &paths {
            assert_eq!(
                universal_value(p, &ones, &g).unwrap(),
                universal_value(p, &Lambda::Sum, &g).unwrap()
            );
        }
    }

    #[test]
    fn sum_is_exact_total() {
        let g = fig1();
        let p = Path::from_arcs(&g, 1, vec![1, 3, 4, 5]).unwrap();
        let total: i64 = p.arc_costs(&g).iter().sum();
        assert_eq!(universal_value(&p, &Lambda::Sum, &g).unwrap(), total);
    }

    #[test]
    fn monotone_under_entrywise_domination() {
        // deleting arcs from a path never increases the value for lam >= 0
        let g = fig1();
        let full = Path::from_arcs(&g, 1, vec![1, 3, 4, 5]).unwrap();
        let prefix = Path::from_arcs(&g, 1, vec![1, 3]).unwrap();
        for lam in [Lambda::Sum, Lambda::Bottleneck, Lambda::KSum(2), Lambda::KMax(2)] {
            assert!(
                universal_value(&prefix, &lam, &g).unwrap()
                    <= universal_value(&full, &lam, &g).unwrap()
            );
        }
    }
}
