//! Fractional matchings of 3-graphs, restricted to a tight component.
//!
//! Optima are computed exactly with the rational simplex in [`crate::lp`].
//! When the optimum falls short of `n/3`, the optimal dual `y` yields a
//! Farkas-type certificate `a = 1 - 3y`: every edge satisfies
//! `a·χ(e) = 3 - 3·y·χ(e) ≤ 0`, while `a·1 = n - 3·Σy > 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{canonical, Hypergraph3, Triple, Vertex};
use crate::lp::{rational_from_f64, PackingLp, FLOAT_TOLERANCE};
use crate::matching::{largest_component, max_matching, uncovered};
use crate::tight::{tight_components, TightComponentLabeling};
use crate::util::{choose2, fmt_rational, int, ratio};

/// Largest `n` solved with the exact simplex in [`max_fractional_matching`];
/// beyond it the floating-point path is used and results are marked
/// approximate.
pub const EXACT_LP_MAX_N: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedEdge {
    pub edge: Triple,
    pub weight: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    pub n: usize,
    /// Edges of non-zero weight, in canonical order.
    pub weights: Vec<WeightedEdge>,
    pub total_weight: BigRational,
    pub support_component: Option<usize>,
    /// Set when produced by the floating-point path; checks then allow
    /// [`FLOAT_TOLERANCE`].
    pub approximate: bool,
}

impl FractionalMatching {
    pub fn zero(n: usize, support_component: Option<usize>) -> Self {
        FractionalMatching {
            n,
            weights: Vec::new(),
            total_weight: BigRational::zero(),
            support_component,
            approximate: false,
        }
    }

    /// Load `Σ_{e ∋ v} w_e` of every vertex, indexed by vertex (slot 0 unused).
    pub fn loads(&self) -> Vec<BigRational> {
        let mut loads = vec![BigRational::zero(); self.n + 1];
        for we in &self.weights {
            for &v in &we.edge {
                loads[v] += &we.weight;
            }
        }
        loads
    }

    fn tolerance(&self) -> BigRational {
        if self.approximate {
            rational_from_f64(FLOAT_TOLERANCE)
        } else {
            BigRational::zero()
        }
    }

    /// Weights in `[0, 1]`, vertex loads at most one, and `total_weight`
    /// equal to the sum of weights. Exact unless `approximate`.
    pub fn is_feasible(&self) -> bool {
        let tol = self.tolerance();
        let one = BigRational::one();
        let weights_ok = self
            .weights
            .iter()
            .all(|we| !we.weight.is_negative() && we.weight <= &one + &tol);
        let loads_ok = self.loads().iter().skip(1).all(|l| *l <= &one + &tol);
        let sum: BigRational = self.weights.iter().map(|we| &we.weight).sum();
        weights_ok && loads_ok && (&sum - &self.total_weight).abs() <= tol
    }

    /// Total weight equals `n/3`.
    pub fn is_perfect(&self) -> bool {
        let target = ratio(self.n, 3);
        (&self.total_weight - &target).abs() <= self.tolerance()
    }

    /// Every edge of non-zero weight is an edge of `h` carrying `label`.
    pub fn is_supported_in(&self, h: &Hypergraph3, labels: &TightComponentLabeling, label: usize) -> bool {
        self.weights
            .iter()
            .all(|we| labels.label_of(h, we.edge) == Some(label))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total_weight": fmt_rational(&self.total_weight),
            "edges": self.weights.iter().map(|we| json!({
                "e": we.edge,
                "w": fmt_rational(&we.weight),
            })).collect::<Vec<_>>(),
            "component": self.support_component,
            "perfect": self.is_perfect(),
            "approximate": self.approximate,
        })
    }
}

/// A vector `a` (indexed by vertex, `a[0]` unused) with `a·1 > 0` and
/// `a·χ(e) ≤ 0` for every edge `e` of the restricted hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub a: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    WrongLength { expected: usize, found: usize },
    NotPositive { total: BigRational },
    EdgeViolated { edge: Triple, value: BigRational },
}

impl FarkasCertificate {
    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn value(&self, v: Vertex) -> &BigRational {
        &self.a[v]
    }

    pub fn dot_ones(&self) -> BigRational {
        self.a.iter().skip(1).sum()
    }

    pub fn dot_set(&self, s: &[Vertex]) -> BigRational {
        s.iter().map(|&v| &self.a[v]).sum()
    }

    /// Checks both certificate conditions over `edges` with exact arithmetic.
    pub fn verify<'a, I>(&self, n: usize, edges: I) -> std::result::Result<(), CertificateFailure>
    where
        I: IntoIterator<Item = &'a Triple>,
    {
        if self.a.len() != n + 1 {
            return Err(CertificateFailure::WrongLength {
                expected: n,
                found: self.a.len().saturating_sub(1),
            });
        }
        let total = self.dot_ones();
        if !total.is_positive() {
            return Err(CertificateFailure::NotPositive { total });
        }
        for e in edges {
            let value = self.dot_set(e);
            if value.is_positive() {
                return Err(CertificateFailure::EdgeViolated { edge: *e, value });
            }
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &BigRational) -> FarkasCertificate {
        FarkasCertificate {
            a: self.a.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": self.a.iter().skip(1).map(fmt_rational).collect::<Vec<_>>() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerfectOrCertificate {
    Perfect(FractionalMatching),
    Certificate(FarkasCertificate),
}

impl PerfectOrCertificate {
    pub fn to_json(&self) -> Value {
        match self {
            PerfectOrCertificate::Perfect(m) => json!({ "outcome": "perfect", "matching": m.to_json() }),
            PerfectOrCertificate::Certificate(c) => {
                json!({ "outcome": "certificate", "certificate": c.to_json() })
            }
        }
    }
}

fn restricted_edges(
    h: &Hypergraph3,
    labels: &TightComponentLabeling,
    restrict_to: Option<usize>,
) -> Result<Vec<Triple>> {
    match restrict_to {
        None => Ok(h.edges().to_vec()),
        Some(c) if c >= labels.component_count => Err(Error::invalid(format!(
            "component {c} does not exist ({} tight components)",
            labels.component_count
        ))),
        Some(c) => Ok(h
            .edges()
            .iter()
            .zip(&labels.labels)
            .filter(|(_, &l)| l == c)
            .map(|(e, _)| *e)
            .collect()),
    }
}

fn packing_lp(n: usize, edges: &[Triple]) -> PackingLp {
    PackingLp::new(n, edges.iter().map(|e| e.iter().map(|&v| v - 1).collect()).collect())
}

fn matching_from(n: usize, edges: &[Triple], x: Vec<BigRational>, comp: Option<usize>) -> FractionalMatching {
    let weights: Vec<WeightedEdge> = edges
        .iter()
        .zip(x)
        .filter(|(_, w)| !w.is_zero())
        .map(|(e, w)| WeightedEdge { edge: *e, weight: w })
        .collect();
    let total_weight = weights.iter().map(|we| &we.weight).sum();
    FractionalMatching {
        n,
        weights,
        total_weight,
        support_component: comp,
        approximate: false,
    }
}

/// Maximum fractional matching on the edges of tight component
/// `restrict_to` (or on all edges). Exact for `n ≤ EXACT_LP_MAX_N`.
pub fn max_fractional_matching(h: &Hypergraph3, restrict_to: Option<usize>) -> Result<FractionalMatching> {
    let labels = tight_components(h);
    let edges = restricted_edges(h, &labels, restrict_to)?;
    if edges.is_empty() {
        return Ok(FractionalMatching::zero(h.n(), restrict_to));
    }
    let lp = packing_lp(h.n(), &edges);
    if h.n() <= EXACT_LP_MAX_N {
        let sol = lp.solve_exact()?;
        return Ok(matching_from(h.n(), &edges, sol.x, restrict_to));
    }
    let sol = lp.solve_float()?;
    let x = sol
        .x
        .iter()
        .map(|&v| if v.abs() <= FLOAT_TOLERANCE { BigRational::zero() } else { rational_from_f64(v) })
        .collect();
    let mut m = matching_from(h.n(), &edges, x, restrict_to);
    m.approximate = true;
    Ok(m)
}

/// Either a perfect fractional matching supported on the given tight
/// component, or a verified certificate that none exists. Always exact; for
/// large `n` a floating-point solve only supplies the starting basis.
pub fn perfect_or_certificate(h: &Hypergraph3, restrict_to: Option<usize>) -> Result<PerfectOrCertificate> {
    let labels = tight_components(h);
    let edges = restricted_edges(h, &labels, restrict_to)?;
    let n = h.n();
    let lp = packing_lp(n, &edges);
    let sol = if n <= EXACT_LP_MAX_N {
        lp.solve_exact()?
    } else {
        lp.solve_exact_warm()?
    };
    let target = ratio(n, 3);
    if sol.objective == target {
        let m = matching_from(n, &edges, sol.x, restrict_to);
        if !m.is_feasible() || !m.is_perfect() {
            return Err(Error::InvariantViolation {
                message: "simplex returned an infeasible perfect matching".into(),
                witness: m.to_json().to_string(),
            });
        }
        return Ok(PerfectOrCertificate::Perfect(m));
    }
    let three = int(3);
    let mut a = vec![BigRational::zero()];
    a.extend(sol.y.iter().map(|y| BigRational::one() - &three * y));
    let cert = FarkasCertificate { a };
    if let Err(f) = cert.verify(n, &edges) {
        return Err(Error::InvariantViolation {
            message: "dual-derived certificate failed verification".into(),
            witness: format!("{f:?}"),
        });
    }
    Ok(PerfectOrCertificate::Certificate(cert))
}

/// Output of [`lemma_fracmatch`].
#[derive(Debug, Clone)]
pub struct FracmatchOutcome {
    /// Label of the tight component containing every star `C_u^*`.
    pub component: usize,
    /// That component as a spanning subgraph `H'` of `H`.
    pub sub: Hypergraph3,
    pub sub_min_degree: usize,
    /// Perfect fractional matching supported in `H'`.
    pub matching: FractionalMatching,
}

/// Strict test `δ(H) > (5/9) C(n, 2)`.
pub fn meets_vertex_degree_condition(h: &Hypergraph3) -> bool {
    let delta = h.min_degree(1).unwrap_or(0);
    9 * delta > 5 * choose2(h.n())
}

/// For `3 | n` and `δ(H) > (5/9) C(n, 2)`: finds the tight component `H'`
/// holding every largest-link-component star, checks
/// `δ(H') ≥ (4/9) C(n, 2)`, and returns a perfect fractional matching
/// supported in `H'`.
pub fn lemma_fracmatch(h: &Hypergraph3) -> Result<FracmatchOutcome> {
    let n = h.n();
    if n == 0 || n % 3 != 0 {
        return Err(Error::Precondition(format!("3 does not divide n = {n}")));
    }
    let delta = h.min_degree(1)?;
    if 9 * delta <= 5 * choose2(n) {
        return Err(Error::Precondition(format!(
            "minimum degree {delta} is not > (5/9)*C({n},2) = {:.3}",
            5.0 * choose2(n) as f64 / 9.0
        )));
    }
    let labels = tight_components(h);
    let mut component: Option<(usize, Vertex)> = None;
    for u in 1..=n {
        let link = h.link_graph(u)?;
        let c_u = largest_component(&link).map_err(|e| Error::InvariantViolation {
            message: "link graph above the density threshold has no edges".into(),
            witness: format!("vertex {u}: {e}"),
        })?;
        for &[a, b] in &c_u.edges {
            let e = canonical([u, a, b]);
            let label = labels.label_of(h, e).expect("star edges are edges of H");
            match component {
                None => component = Some((label, u)),
                Some((c, first)) if c != label => {
                    return Err(Error::InvariantViolation {
                        message: "stars of largest link components lie in different tight components".into(),
                        witness: format!(
                            "star of vertex {first} is in component {c}, edge {:?} of the star of {u} is in component {label}",
                            e
                        ),
                    });
                }
                Some(_) => {}
            }
        }
    }
    let (component, _) = component.expect("n >= 3 and non-empty links");
    let sub = h.filter_edges(|id, _| labels.labels[id] == component);
    let sub_min_degree = sub.min_degree(1)?;
    if 9 * sub_min_degree < 4 * choose2(n) {
        return Err(Error::InvariantViolation {
            message: "tight component below (4/9)*C(n,2) minimum degree".into(),
            witness: format!("component {component}, minimum degree {sub_min_degree}"),
        });
    }
    match perfect_or_certificate(h, Some(component))? {
        PerfectOrCertificate::Perfect(matching) => Ok(FracmatchOutcome {
            component,
            sub,
            sub_min_degree,
            matching,
        }),
        PerfectOrCertificate::Certificate(cert) => {
            let refutation = refute_certificate(h, sub.edges(), &cert);
            Err(Error::InvariantViolation {
                message: "no perfect fractional matching in the star component".into(),
                witness: format!("certificate {} ; {:?}", cert.to_json(), refutation),
            })
        }
    }
}

/// Result of replaying the contradiction argument against a candidate
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// `a·1 > 0` fails.
    NotPositive { total: BigRational },
    /// The link of the chosen vertex has no matching of size `n/3`, so the
    /// argument cannot be run (the degree condition must fail).
    NoLargeMatching { vertex: Vertex, size: usize },
    /// `e_i = {u, x_i, y_i}` is missing from the supplied edge set.
    EdgeMissing { edge: Triple },
    /// `a·χ(e_i) > 0`: the certificate's edge inequality fails at `e_i`.
    EdgeViolated { edge: Triple, value: BigRational },
    /// Every link of `0 < a·1 = Σ a·χ(S_i) ≤ Σ a·χ(e_i) ≤ 0` checked out.
    /// Only reachable if the degree condition fails or there is a bug.
    Contradiction,
}

/// Builds the partition `S_i = {x_i, y_i, z_i}` from a size-`n/3` matching
/// `x_i y_i` in the largest link component of a vertex `u` maximising `a_u`,
/// and reports which inequality of the chain
/// `0 < a·1 = Σ a·χ(S_i) ≤ Σ a·χ(e_i) ≤ 0` breaks.
pub fn refute_certificate(h: &Hypergraph3, edges: &[Triple], cert: &FarkasCertificate) -> Refutation {
    let n = h.n();
    let total = cert.dot_ones();
    if !total.is_positive() {
        return Refutation::NotPositive { total };
    }
    let u = (1..=n)
        .max_by(|&x, &y| cert.a[x].cmp(&cert.a[y]).then(y.cmp(&x)))
        .expect("n >= 1");
    let link = match h.link_graph(u) {
        Ok(l) => l,
        Err(_) => return Refutation::NoLargeMatching { vertex: u, size: 0 },
    };
    let Ok(c_u) = largest_component(&link) else {
        return Refutation::NoLargeMatching { vertex: u, size: 0 };
    };
    let host = crate::graph::Graph::new(n, c_u.edges.iter().copied()).expect("component edges are valid");
    let full = max_matching(&host);
    if full.size() < n / 3 {
        return Refutation::NoLargeMatching {
            vertex: u,
            size: full.size(),
        };
    }
    let m = full.truncated(n / 3);
    let zs = uncovered(&m, n);
    debug_assert_eq!(zs.len(), n - 2 * (n / 3));
    let mut sorted_edges = edges.to_vec();
    sorted_edges.sort_unstable();
    let mut sum_s = BigRational::zero();
    let mut sum_e = BigRational::zero();
    for (&[x, y], &z) in m.pairs.iter().zip(&zs) {
        let e = canonical([u, x, y]);
        if sorted_edges.binary_search(&e).is_err() {
            return Refutation::EdgeMissing { edge: e };
        }
        let value = cert.dot_set(&e);
        if value.is_positive() {
            return Refutation::EdgeViolated { edge: e, value };
        }
        sum_s += cert.dot_set(&[x, y, z]);
        sum_e += value;
    }
    debug_assert!(sum_s <= sum_e);
    debug_assert_eq!(sum_s, total);
    Refutation::Contradiction
}

/// Exact weight `n/3` as a rational, for callers comparing totals.
pub fn perfect_weight(n: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(3))
}
