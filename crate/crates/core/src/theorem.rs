//! Twisted fiber counts and the Hasse-Weil window for the sum of measures.
//!
//! For `gamma` in the Frobenius coset `F N`, the twist `M_gamma` is the
//! fixed field of `(F', gamma)` in `k_m M`, `m = ord(gamma)`. It is never
//! built: its rational places over `P` are counted as the places `Q` of `M`
//! above `P` with `gamma in (Q, M/K)`, each contributing `deg_k(Q) / h`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::abstract_model::Measure;
use crate::covers::{
    genus, places_above_oracle, splitting_data, Cover, FrobeniusData, GroupElement, OracleFiber,
};
use crate::error::{Error, Result};
use crate::function_field::{places_up_to_degree, rational_places, Place};

/// `(P, M)(gamma) = #((Q, M/K) ∩ {gamma}) / #(Q, M/K)` for abelian `G`.
pub fn measure(data: &FrobeniusData, cover: &Cover, gamma: &GroupElement) -> Result<Measure> {
    cover.group().check(gamma)?;
    let hit = u64::from(data.frobenius.contains(gamma));
    Ok(Measure::new(hit, data.frobenius.len() as u64))
}

/// A cover together with a twisting element `gamma` of `F N`.
#[derive(Debug, Clone)]
pub struct GammaContext {
    cover: Cover,
    gamma: GroupElement,
    m: u64,
}

impl GammaContext {
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn gamma(&self) -> &GroupElement {
        &self.gamma
    }

    /// `m = ord(gamma) = [k_m : k]`.
    pub fn twist_degree(&self) -> u64 {
        self.m
    }

    /// `q^m`, the size of `k_m`.
    pub fn twist_field_order(&self) -> num_bigint::BigUint {
        num_bigint::BigUint::from(self.cover.q()).pow(self.m as u32)
    }

    /// Order of `(F', gamma)` in `Gal(k_m K/K) x Gal(M/K)`.
    pub fn fibered_order(&self) -> u64 {
        self.m.lcm(&self.cover.group().element_order(&self.gamma))
    }
}

/// Checks `gamma in F N` and the invariants of the twist.
pub fn make_gamma_context(cover: &Cover, gamma: &GroupElement) -> Result<GammaContext> {
    cover.group().check(gamma)?;
    if !cover.in_frobenius_coset(gamma) {
        return Err(Error::GammaNotInCoset(gamma.to_string()));
    }
    let m = cover.group().element_order(gamma);
    let h = cover.constant_degree();
    // F' restricts to the Frobenius of k'/k, as does gamma
    let f_prime_image = 1 % h;
    let ctx = GammaContext {
        cover: cover.clone(),
        gamma: gamma.clone(),
        m,
    };
    let fibered = f_prime_image == cover.quotient_image(gamma);
    if !m.is_multiple_of(h) || !fibered || ctx.fibered_order() != m {
        return Err(Error::GammaNotInCoset(format!(
            "{gamma}: twist invariants fail (m = {m}, h = {h})"
        )));
    }
    Ok(ctx)
}

/// The elements of `F N`, in group order.
pub fn gamma_choices(cover: &Cover) -> Vec<GroupElement> {
    cover.frobenius_coset().into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Count fibers from the point-enumeration oracle instead of the
    /// closed-form splitting data.
    pub oracle: bool,
    /// Places of degree `2..=max_degree` enter the reported tail of the sum.
    pub max_degree: usize,
    pub workers: usize,
    pub enumeration_limit: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle: false,
            max_degree: 1,
            workers: 1,
            enumeration_limit: crate::algebra::DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

/// `sum over Q above P with gamma in (Q, M/K) of deg_k(Q) / h`, from the
/// closed-form splitting data.
pub fn phi_fiber_count(ctx: &GammaContext, data: &FrobeniusData) -> Result<u64> {
    if data.place.degree() != 1 {
        return Err(Error::NotRational(data.place.to_string()));
    }
    if !data.frobenius.contains(&ctx.gamma) {
        return Ok(0);
    }
    let h = ctx.cover.constant_degree();
    let term = fiber_term(&data.place, data.degree_above, h)?;
    Ok(term * data.places_above)
}

/// The same count, summing over the Frobenius orbits found by the oracle.
pub fn phi_fiber_count_oracle(ctx: &GammaContext, fiber: &OracleFiber) -> Result<u64> {
    if fiber.place.degree() != 1 {
        return Err(Error::NotRational(fiber.place.to_string()));
    }
    let h = ctx.cover.constant_degree();
    fiber
        .places
        .iter()
        .filter(|q| q.frobenius.contains(&ctx.gamma))
        .map(|q| fiber_term(&fiber.place, q.degree, h))
        .sum()
}

fn fiber_term(place: &Place, deg_q: u64, h: u64) -> Result<u64> {
    if !deg_q.is_multiple_of(h) {
        return Err(Error::NonIntegralFiberTerm {
            place: place.to_string(),
            deg_q,
            h,
        });
    }
    Ok(deg_q / h)
}

/// `#P^1(M_gamma)`: the places `Q` of `M` of degree-one restriction with
/// `gamma in (Q, M/K)`, weighted by `deg_k(Q) / h`, counted place by place.
pub fn twist_rational_place_count(ctx: &GammaContext) -> Result<u64> {
    let h = ctx.cover.constant_degree();
    let mut total = 0;
    for place in rational_places(ctx.cover.base()) {
        let data = splitting_data(&ctx.cover, &place)?;
        for _ in 0..data.places_above {
            if data.frobenius.contains(&ctx.gamma) {
                total += fiber_term(&place, data.degree_above, h)?;
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceRow {
    pub place: String,
    pub e: u64,
    pub f: u64,
    pub deg_q: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub measure: Measure,
    /// `#N (P, M)(gamma)`; `None` if it is not an integer.
    pub predicted_fiber: Option<u64>,
    pub counted_fiber: u64,
    /// Oracle-versus-formula comparison, when the oracle ran.
    pub oracle: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailTerm {
    pub degree: usize,
    pub places: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub sum: Measure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollarySummary {
    /// `S`, the sum of the measure over rational places.
    #[serde(serialize_with = "ser_ratio")]
    pub sum: Measure,
    /// `(q + 1) / #N`.
    #[serde(serialize_with = "ser_ratio")]
    pub target: Measure,
    pub genus: Option<u64>,
    /// `2 g sqrt(q) / #N` to six places, for display only.
    pub bound: Option<String>,
    /// `(#N S - (q + 1))^2` and `4 g^2 q`, compared exactly.
    pub lhs_squared: Option<String>,
    pub rhs_squared: Option<u64>,
    pub verdict: Verdict,
    /// Contributions of places of higher degree, outside the sum.
    pub tail: Vec<TailTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub cover: String,
    pub q: u64,
    pub gamma: GroupElement,
    pub twist_degree: u64,
    pub geometric_order: u64,
    pub constant_degree: u64,
    pub oracle: bool,
    pub places: Vec<PlaceRow>,
    pub fibers_total: u64,
    pub twist_rational_places: u64,
    pub theorem_pass: bool,
    pub corollary: Option<CorollarySummary>,
}

fn ser_ratio<S: serde::Serializer>(r: &Measure, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.theorem_pass
            && self
                .corollary
                .as_ref()
                .is_none_or(|c| c.verdict != Verdict::Fail)
    }

    /// The first failed assertion as an error.
    pub fn check(&self) -> Result<()> {
        if let Some(row) = self.places.iter().find(|r| !r.pass) {
            return Err(Error::TheoremViolation {
                place: row.place.clone(),
                detail: format!(
                    "predicted {:?}, counted {}, oracle {:?}",
                    row.predicted_fiber, row.counted_fiber, row.oracle
                ),
            });
        }
        if !self.theorem_pass {
            return Err(Error::TheoremViolation {
                place: "all".into(),
                detail: format!(
                    "fiber total {} differs from twist count {}",
                    self.fibers_total, self.twist_rational_places
                ),
            });
        }
        if let Some(c) = &self.corollary {
            if c.verdict == Verdict::Fail {
                return Err(Error::BoundViolation(format!(
                    "S = {}, target {}, genus {:?}",
                    c.sum, c.target, c.genus
                )));
            }
        }
        Ok(())
    }

    /// One row per place with the columns
    /// `place,e,f,deg_Q,measure_num,measure_den,predicted_fiber,counted_fiber,pass`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Config(e.to_string());
        w.write_record([
            "place",
            "e",
            "f",
            "deg_Q",
            "measure_num",
            "measure_den",
            "predicted_fiber",
            "counted_fiber",
            "pass",
        ])
        .map_err(io)?;
        for r in &self.places {
            w.write_record([
                r.place.clone(),
                r.e.to_string(),
                r.f.to_string(),
                r.deg_q.to_string(),
                r.measure.numer().to_string(),
                r.measure.denom().to_string(),
                r.predicted_fiber.map_or(String::new(), |p| p.to_string()),
                r.counted_fiber.to_string(),
                r.pass.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} over F_{}  gamma = {}  m = {}  #N = {}  h = {}",
            self.cover,
            self.q,
            self.gamma,
            self.twist_degree,
            self.geometric_order,
            self.constant_degree
        )?;
        writeln!(
            f,
            "{:<16} {:>3} {:>3} {:>5} {:>8} {:>9} {:>7}  ok",
            "place", "e", "f", "deg_Q", "measure", "predicted", "counted"
        )?;
        for r in &self.places {
            let predicted = r.predicted_fiber.map_or("-".to_string(), |p| p.to_string());
            writeln!(
                f,
                "{:<16} {:>3} {:>3} {:>5} {:>8} {:>9} {:>7}  {}",
                r.place,
                r.e,
                r.f,
                r.deg_q,
                r.measure.to_string(),
                predicted,
                r.counted_fiber,
                if r.pass { "yes" } else { "NO" }
            )?;
        }
        writeln!(
            f,
            "fibers: {}  twist rational places: {}  theorem: {}",
            self.fibers_total,
            self.twist_rational_places,
            if self.theorem_pass { "pass" } else { "FAIL" }
        )?;
        if let Some(c) = &self.corollary {
            let genus = c.genus.map_or("unsupported".to_string(), |g| g.to_string());
            writeln!(
                f,
                "S = {}  target = {}  genus = {}  bound = {}  verdict: {:?}",
                c.sum,
                c.target,
                genus,
                c.bound.as_deref().unwrap_or("-"),
                c.verdict
            )?;
            for t in &c.tail {
                writeln!(
                    f,
                    "  tail degree {}: {} places, sum {}",
                    t.degree, t.places, t.sum
                )?;
            }
        }
        Ok(())
    }
}

/// Maps `f` over `places` on `workers` threads, keeping input order. One
/// worker runs inline, without a thread pool.
pub fn map_places<T, F>(workers: usize, places: &[Place], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Place) -> Result<T> + Sync,
{
    if workers <= 1 {
        return places.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| places.par_iter().map(&f).collect())
}

fn place_row(ctx: &GammaContext, place: &Place, opts: &VerifyOptions) -> Result<PlaceRow> {
    let cover = &ctx.cover;
    let data = splitting_data(cover, place)?;
    let m = measure(&data, cover, &ctx.gamma)?;
    let scaled = m * Measure::from_integer(cover.geometric_order());
    let predicted = scaled.is_integer().then(|| scaled.to_integer());
    let (counted, oracle) = if opts.oracle {
        match places_above_oracle(cover, place, opts.enumeration_limit) {
            Ok(fiber) => {
                let diffs = fiber.disagreements(&data);
                let note = if diffs.is_empty() {
                    "agree".to_string()
                } else {
                    format!("disagree: {}", diffs.join("; "))
                };
                (phi_fiber_count_oracle(ctx, &fiber)?, Some(note))
            }
            Err(Error::SingularModelPoint(why)) => (
                phi_fiber_count(ctx, &data)?,
                Some(format!("skipped: singular fibre {why}")),
            ),
            Err(e) => return Err(e),
        }
    } else {
        (phi_fiber_count(ctx, &data)?, None)
    };
    let nonempty_iff = (counted > 0) == data.frobenius.contains(&ctx.gamma);
    let oracle_ok = oracle.as_ref().is_none_or(|o| !o.starts_with("disagree"));
    Ok(PlaceRow {
        place: place.to_string(),
        e: data.ramification_index,
        f: data.residue_degree,
        deg_q: data.degree_above,
        measure: m,
        predicted_fiber: predicted,
        counted_fiber: counted,
        pass: predicted == Some(counted) && nonempty_iff && oracle_ok,
        oracle,
    })
}

/// Checks `#phi^-1(P) = #N (P, M)(gamma)` at every rational place.
pub fn verify_theorem(ctx: &GammaContext, opts: &VerifyOptions) -> Result<TheoremReport> {
    let places = rational_places(ctx.cover.base());
    let rows = map_places(opts.workers, &places, |p| place_row(ctx, p, opts))?;
    let fibers_total = rows.iter().map(|r| r.counted_fiber).sum();
    let twist = twist_rational_place_count(ctx)?;
    Ok(TheoremReport {
        cover: ctx.cover.descriptor().to_string(),
        q: ctx.cover.q(),
        gamma: ctx.gamma.clone(),
        twist_degree: ctx.m,
        geometric_order: ctx.cover.geometric_order(),
        constant_degree: ctx.cover.constant_degree(),
        oracle: opts.oracle,
        theorem_pass: rows.iter().all(|r| r.pass) && fibers_total == twist,
        places: rows,
        fibers_total,
        twist_rational_places: twist,
        corollary: None,
    })
}

/// `|S - (q + 1)/#N| <= 2 g sqrt(q) / #N`, compared as
/// `(#N S - (q + 1))^2 <= 4 g^2 q` over the rationals.
pub fn verify_corollary(ctx: &GammaContext, opts: &VerifyOptions) -> Result<CorollarySummary> {
    let cover = &ctx.cover;
    let base = cover.base();
    let n = cover.geometric_order();
    let q = cover.q();
    let sum_over = |places: &[Place]| -> Result<Measure> {
        let terms = map_places(opts.workers, places, |p| {
            measure(&splitting_data(cover, p)?, cover, &ctx.gamma)
        })?;
        Ok(terms
            .into_iter()
            .fold(Measure::from_integer(0), |a, b| a + b))
    };
    let sum = sum_over(&rational_places(base))?;
    let target = Measure::new(q + 1, n);

    let mut tail = Vec::new();
    if opts.max_degree >= 2 {
        let all = places_up_to_degree(base, opts.max_degree, opts.enumeration_limit)?;
        for degree in 2..=opts.max_degree {
            let places: Vec<Place> = all
                .iter()
                .filter(|p| p.degree() == degree)
                .cloned()
                .collect();
            tail.push(TailTerm {
                degree,
                places: places.len(),
                sum: sum_over(&places)?,
            });
        }
    }

    let (genus, verdict, lhs, rhs, bound) = match genus(cover) {
        Ok(g) => {
            let scaled = Ratio::<i128>::new(*sum.numer() as i128, *sum.denom() as i128)
                * (n as i128)
                - Ratio::from_integer(q as i128 + 1);
            let lhs = scaled * scaled;
            let rhs = 4 * g * g * q;
            let verdict = if lhs <= Ratio::from_integer(rhs as i128) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let bound = format!("{:.6}", 2.0 * g as f64 * (q as f64).sqrt() / n as f64);
            (
                Some(g),
                verdict,
                Some(lhs.to_string()),
                Some(rhs),
                Some(bound),
            )
        }
        Err(Error::UnsupportedGenus(_)) => (None, Verdict::Skipped, None, None, None),
        Err(e) => return Err(e),
    };
    Ok(CorollarySummary {
        sum,
        target,
        genus,
        bound,
        lhs_squared: lhs,
        rhs_squared: rhs,
        verdict,
        tail,
    })
}

/// Both checks in one report.
pub fn verify(ctx: &GammaContext, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut report = verify_theorem(ctx, opts)?;
    report.corollary = Some(verify_corollary(ctx, opts)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Poly};
    use crate::covers::{make_cover, CoverDescriptor};
    use crate::function_field::RationalFunction;

    fn kummer_x() -> Cover {
        let k = FiniteField::prime(5).unwrap();
        make_cover(
            &k,
            &CoverDescriptor::Kummer {
                n: 2,
                f: RationalFunction::x(&k),
            },
        )
        .unwrap()
    }

    fn place(c: &[i64]) -> Place {
        let k = FiniteField::prime(5).unwrap();
        Place::finite(Poly::from_i64s(&k, c)).unwrap()
    }

    #[test]
    fn contexts() {
        let cover = kummer_x();
        let ctx = make_gamma_context(&cover, &GroupElement(vec![1])).unwrap();
        assert_eq!(ctx.twist_degree(), 2);
        assert_eq!(ctx.twist_field_order(), 25u32.into());
        let id = make_gamma_context(&cover, &GroupElement(vec![0])).unwrap();
        assert_eq!(id.twist_degree(), 1);
        let k = FiniteField::prime(5).unwrap();
        let cubic = make_cover(&k, &CoverDescriptor::Constant { m: 3 }).unwrap();
        assert_eq!(
            make_gamma_context(&cubic, &GroupElement(vec![1]))
                .unwrap()
                .twist_degree(),
            3
        );
        assert!(matches!(
            make_gamma_context(&cubic, &GroupElement(vec![2])),
            Err(Error::GammaNotInCoset(_))
        ));
    }

    #[test]
    fn quadratic_fibers() {
        let cover = kummer_x();
        let ctx = make_gamma_context(&cover, &GroupElement(vec![1])).unwrap();
        let phi = |p: &Place| phi_fiber_count(&ctx, &splitting_data(&cover, p).unwrap()).unwrap();
        assert_eq!(phi(&place(&[-2, 1])), 2);
        assert_eq!(phi(&place(&[0, 1])), 1);
        assert_eq!(phi(&place(&[-1, 1])), 0);
        let data = splitting_data(&cover, &place(&[0, 1])).unwrap();
        assert_eq!(
            measure(&data, &cover, &GroupElement(vec![1])).unwrap(),
            Measure::new(1, 2)
        );
    }

    #[test]
    fn quadratic_reports() {
        let cover = kummer_x();
        let opts = VerifyOptions::default();
        for (gamma, fibers) in [(1, vec![1, 0, 2, 2, 0, 1]), (0, vec![1, 2, 0, 0, 2, 1])] {
            let ctx = make_gamma_context(&cover, &GroupElement(vec![gamma])).unwrap();
            let report = verify(&ctx, &opts).unwrap();
            report.check().unwrap();
            // order: (x), (x+1), (x+2), (x+3), (x+4), inf
            let counted: Vec<u64> = report.places.iter().map(|r| r.counted_fiber).collect();
            assert_eq!(counted, fibers);
            assert_eq!(report.fibers_total, 6);
            let c = report.corollary.unwrap();
            assert_eq!(c.sum, Measure::from_integer(3));
            assert_eq!(c.verdict, Verdict::Pass);
        }
    }

    #[test]
    fn csv_columns() {
        let cover = kummer_x();
        let ctx = make_gamma_context(&cover, &GroupElement(vec![1])).unwrap();
        let csv = verify_theorem(&ctx, &VerifyOptions::default())
            .unwrap()
            .to_csv()
            .unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "place,e,f,deg_Q,measure_num,measure_den,predicted_fiber,counted_fiber,pass"
        );
        assert_eq!(lines.next().unwrap(), "(x),2,1,1,1,2,1,1,true");
    }

    #[test]
    fn oracle_mode_and_workers_agree() {
        let k = FiniteField::prime(5).unwrap();
        let f = RationalFunction::from_poly(Poly::from_i64s(&k, &[0, 0, 0, 1]));
        let cover = make_cover(&k, &CoverDescriptor::ArtinSchreier { f }).unwrap();
        for gamma in gamma_choices(&cover) {
            let ctx = make_gamma_context(&cover, &gamma).unwrap();
            let plain = verify(&ctx, &VerifyOptions::default()).unwrap();
            let opts = VerifyOptions {
                oracle: true,
                workers: 4,
                ..VerifyOptions::default()
            };
            let with_oracle = verify(&ctx, &opts).unwrap();
            with_oracle.check().unwrap();
            assert!(with_oracle
                .places
                .iter()
                .all(|r| r.oracle.as_deref() == Some("agree")));
            let counts =
                |r: &TheoremReport| r.places.iter().map(|p| p.counted_fiber).collect::<Vec<_>>();
            assert_eq!(counts(&plain), counts(&with_oracle));
        }
    }

    #[test]
    fn constant_twist_and_tail() {
        let k = FiniteField::prime(5).unwrap();
        let cover = make_cover(&k, &CoverDescriptor::Constant { m: 2 }).unwrap();
        let ctx = make_gamma_context(&cover, &GroupElement(vec![1])).unwrap();
        let opts = VerifyOptions {
            max_degree: 2,
            ..VerifyOptions::default()
        };
        let report = verify(&ctx, &opts).unwrap();
        report.check().unwrap();
        assert!(report.places.iter().all(|r| r.counted_fiber == 1));
        // Frobenius of a degree-two place is trivial on F_25
        let tail = &report.corollary.unwrap().tail;
        assert_eq!(tail[0].sum, Measure::from_integer(0));
    }

    #[test]
    fn klein_four_composite_sits_on_target() {
        let k = FiniteField::prime(5).unwrap();
        let cover = make_cover(
            &k,
            &CoverDescriptor::Composite(vec![
                CoverDescriptor::Kummer {
                    n: 2,
                    f: RationalFunction::x(&k),
                },
                CoverDescriptor::Kummer {
                    n: 2,
                    f: RationalFunction::from_poly(Poly::from_i64s(&k, &[1, 1])),
                },
            ]),
        )
        .unwrap();
        let ctx = make_gamma_context(&cover, &GroupElement(vec![1, 1])).unwrap();
        let c = verify_corollary(&ctx, &VerifyOptions::default()).unwrap();
        // genus 0, so S must equal (q + 1) / #N exactly
        assert_eq!(c.genus, Some(0));
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.sum, Measure::new(3, 2));
    }
}
