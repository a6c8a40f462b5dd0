//! Golden-corpus runner: executes every acceptance criterion against the
//! files under a corpus directory and the expectations in its `golden/`
//! subdirectory.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use jacfact_core::jacobian::{hilbert_series_oracle, JacobianRing};
use jacfact_core::lattice::{
    degree_shift_isometry, discriminant_action, discriminant_group, find_orientation_preserving_lift,
    nikulin_extend, orthogonal_group, overlattice_from_glue, signature, DiscAutomorphism, GlueMap, Lattice,
};
use jacfact_core::mf::{compare_ring, hom_space, koszul_mf, lmf_ring, MatrixFactorization};
use jacfact_core::poly::monomial_basis;
use jacfact_core::{Budget, Field, FieldConfig, Polynomial, PrimeField, Rationals};

use crate::commands::{chain_rule_checks, isometry_arg, load_lattice, load_mf, MfObject};
use crate::formats::parse_poly_file;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("missing corpus file {0}")]
    Missing(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    /// Non-blocking criteria are reported but do not fail the run.
    pub blocking: bool,
    pub details: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = match (self.passed, self.blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-blocking)",
        };
        let mut s = format!("criterion {} ({}): {tag} [{:.2} s]", self.id, self.name, self.seconds);
        if !self.passed {
            for d in &self.details {
                s.push_str("\n    ");
                s.push_str(d);
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub field: String,
    pub criteria: Vec<CriterionResult>,
}

impl CorpusSummary {
    pub fn all_blocking_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.passed || !c.blocking)
    }

    /// `(id, passed)` for every criterion.
    pub fn pass_set(&self) -> Vec<(String, bool)> {
        self.criteria.iter().map(|c| (c.id.clone(), c.passed)).collect()
    }

    pub fn get(&self, id: &str) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("corpus run, field {}\n", self.field);
        for c in &self.criteria {
            out.push_str(&c.line());
            out.push('\n');
        }
        out
    }

    /// Deterministic JSON (timings excluded).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Collects the failures of one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        self.check(got == want, || format!("{what}: got {got:?}, expected {want:?}"));
    }

    fn within(&mut self, what: &str, start: Instant, max_seconds: f64) {
        let s = start.elapsed().as_secs_f64();
        self.check(s <= max_seconds, || format!("{what}: {s:.2} s exceeds {max_seconds} s"));
    }
}

struct Corpus<'a, F: Field> {
    dir: &'a Path,
    field: F,
    budget: Budget,
}

impl<F: Field> Corpus<'_, F> {
    fn path(&self, rel: &str) -> Result<PathBuf, CorpusError> {
        let p = self.dir.join(rel);
        if p.is_file() {
            Ok(p)
        } else {
            Err(CorpusError::Missing(p))
        }
    }

    fn read(&self, rel: &str) -> Result<String, CorpusError> {
        let p = self.path(rel)?;
        std::fs::read_to_string(&p).map_err(|_| CorpusError::Missing(p))
    }

    /// A golden file; a malformed one becomes a failure of its criterion.
    fn golden<T: DeserializeOwned>(&self, name: &str, out: &mut Outcome) -> Result<Option<T>, CorpusError> {
        let text = self.read(&format!("golden/{name}"))?;
        match serde_json::from_str(&text) {
            Ok(v) => Ok(Some(v)),
            Err(e) => {
                out.fail(format!("golden/{name} is malformed: {e}"));
                Ok(None)
            }
        }
    }

    fn poly(&self, rel: &str, out: &mut Outcome) -> Result<Option<Polynomial<F>>, CorpusError> {
        let text = self.read(rel)?;
        match parse_poly_file(&text, self.field) {
            Ok(p) => Ok(Some(p)),
            Err(e) => {
                out.fail(format!("{rel}: {e}"));
                Ok(None)
            }
        }
    }

    fn ring(&self, rel: &str, out: &mut Outcome) -> Result<Option<JacobianRing<F>>, CorpusError> {
        let Some(f) = self.poly(rel, out)? else { return Ok(None) };
        match JacobianRing::build_with_budget(&f, &self.budget) {
            Ok(j) => Ok(Some(j)),
            Err(e) => {
                out.fail(format!("{rel}: {e}"));
                Ok(None)
            }
        }
    }

    fn mf(&self, rel: &str, out: &mut Outcome) -> Result<Option<MatrixFactorization<F>>, CorpusError> {
        let p = self.path(rel)?;
        let text = self.read(rel)?;
        match load_mf(self.field, &p, &text, MfObject::Koszul) {
            Ok(m) => Ok(Some(m)),
            Err(e) => {
                out.fail(format!("{rel}: {e}"));
                Ok(None)
            }
        }
    }
}

/// Runs every criterion. Only a missing file aborts the run; anything else
/// is recorded as a failure of the criterion it belongs to.
pub fn run_corpus(dir: &Path, field: FieldConfig, budget: Budget) -> Result<CorpusSummary, CorpusError> {
    let criteria = match field {
        FieldConfig::Rationals => run_all(&Corpus { dir, field: Rationals, budget })?,
        FieldConfig::Prime(p) => run_all(&Corpus::<PrimeField> { dir, field: p, budget })?,
    };
    Ok(CorpusSummary {
        field: field.to_string(),
        criteria,
    })
}

type Runner<'a, F> = fn(&Corpus<'a, F>, &mut Outcome) -> Result<(), CorpusError>;

fn run_all<F: Field>(c: &Corpus<'_, F>) -> Result<Vec<CriterionResult>, CorpusError> {
    let table: [(&str, &str, bool, Runner<'_, F>); 10] = [
        ("1", "Jacobian top degree", true, c1_top_degree),
        ("2", "cubic fourfold Hilbert function", true, c2_cubic_fourfold),
        ("3", "Gorenstein pairing", true, c3_pairing),
        ("4", "Hilbert oracle", true, c4_oracle),
        ("5", "MF axioms", true, c5_mf_axioms),
        ("6", "chain rule", true, c6_chain_rule),
        ("7", "L_MF versus J for x0^3+x1^3", true, c7_lmf),
        ("7s", "L_MF versus J for x0^4+x1^4 (stretch)", false, c7_stretch),
        ("8", "lattice suite", true, c8_lattice),
        ("9", "property suite", true, c9_properties),
    ];
    let mut results = Vec::new();
    for (id, name, blocking, run) in table {
        let start = Instant::now();
        let mut out = Outcome::default();
        run(c, &mut out)?;
        results.push(CriterionResult {
            id: id.to_string(),
            name: name.to_string(),
            passed: out.failures.is_empty(),
            blocking,
            details: out.failures,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(results)
}

// ---------------------------------------------------------------- 1 to 4

#[derive(Deserialize)]
struct TopDegreeGolden {
    max_seconds: f64,
    cases: Vec<TopDegreeCase>,
}

#[derive(Deserialize)]
struct TopDegreeCase {
    file: String,
    n: usize,
    d: u32,
    sigma: u32,
}

fn c1_top_degree<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<TopDegreeGolden>("c1_top_degree.json", out)? else { return Ok(()) };
    let start = Instant::now();
    for case in &g.cases {
        let Some(j) = c.ring(&case.file, out)? else { continue };
        let f = &case.file;
        out.eq(&format!("{f}: variables"), j.num_vars(), case.n + 2);
        out.eq(&format!("{f}: degree"), j.degree(), case.d);
        out.eq(&format!("{f}: sigma"), j.sigma(), case.sigma);
        out.eq(&format!("{f}: (n+2)(d-2)"), j.sigma() as usize, (case.n + 2) * (case.d as usize - 2));
        out.eq(&format!("{f}: dim J_sigma"), j.dim(j.sigma()), 1);
        let above: Vec<usize> = (j.sigma() + 1..=j.sigma() + j.degree()).map(|l| j.dim(l)).collect();
        out.eq(&format!("{f}: dims above sigma"), above, vec![0; case.d as usize]);
    }
    out.within("total", start, g.max_seconds);
    Ok(())
}

#[derive(Deserialize)]
struct FourfoldGolden {
    file: String,
    hilbert_function: Vec<usize>,
    dim_j3: usize,
    max_seconds: f64,
}

fn c2_cubic_fourfold<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<FourfoldGolden>("c2_cubic_fourfold.json", out)? else { return Ok(()) };
    let start = Instant::now();
    let Some(j) = c.ring(&g.file, out)? else { return Ok(()) };
    out.within("build", start, g.max_seconds);
    let h: Vec<usize> = (0..=j.sigma()).map(|l| j.dim(l)).collect();
    out.eq("Hilbert function", h, g.hilbert_function);
    out.eq("dim J_3", j.dim(3), g.dim_j3);
    Ok(())
}

#[derive(Deserialize)]
struct PairingGolden {
    cases: Vec<PairingCase>,
}

#[derive(Deserialize)]
struct PairingCase {
    file: String,
    max_seconds: f64,
}

fn c3_pairing<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<PairingGolden>("c3_pairing.json", out)? else { return Ok(()) };
    for case in &g.cases {
        let start = Instant::now();
        let Some(j) = c.ring(&case.file, out)? else { continue };
        if !j.is_smooth() {
            out.fail(format!("{}: not smooth", case.file));
            continue;
        }
        for l in 0..=j.sigma() {
            match j.pairing_matrix(l) {
                Ok(p) => out.check(p.nondegenerate && p.rank == j.dim(l), || {
                    format!("{}: pairing in degree {l} has rank {} of {}", case.file, p.rank, j.dim(l))
                }),
                Err(e) => out.fail(format!("{}: degree {l}: {e}", case.file)),
            }
        }
        out.within(&case.file, start, case.max_seconds);
    }
    Ok(())
}

#[derive(Deserialize)]
struct OracleGolden {
    cases: Vec<OracleCase>,
}

#[derive(Deserialize)]
struct OracleCase {
    file: String,
    smooth: bool,
}

fn c4_oracle<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<OracleGolden>("c4_oracle.json", out)? else { return Ok(()) };
    for case in &g.cases {
        let Some(j) = c.ring(&case.file, out)? else { continue };
        out.eq(&format!("{}: smooth", case.file), j.is_smooth(), case.smooth);
        if case.smooth && j.is_smooth() {
            let computed: Vec<u64> = j.hilbert_function().iter().map(|&x| x as u64).collect();
            let oracle = hilbert_series_oracle(j.num_vars(), j.degree());
            out.eq(&format!("{}: Hilbert function vs oracle", case.file), computed, oracle);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- 5 to 7

#[derive(Deserialize)]
struct MfGolden {
    max_seconds: f64,
    cases: Vec<MfCase>,
}

#[derive(Deserialize)]
struct MfCase {
    file: String,
    rank_k: usize,
    rank_l: usize,
}

fn c5_mf_axioms<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<MfGolden>("c5_mf_axioms.json", out)? else { return Ok(()) };
    let start = Instant::now();
    for case in &g.cases {
        let Some(p) = c.mf(&case.file, out)? else { continue };
        let f = &case.file;
        out.eq(&format!("{f}: ranks"), (p.rank_k(), p.rank_l()), (case.rank_k, case.rank_l));
        if let Err(v) = p.validate() {
            out.fail(format!("{f}: {v}"));
        }
        if let Err(v) = p.shift().validate() {
            out.fail(format!("{f}: shift: {v}"));
        }
        out.check(p.shift().shift() == p.degree_shift(p.degree() as i64), || {
            format!("{f}: shift twice differs from the degree shift by d")
        });
    }
    out.within("total", start, g.max_seconds);
    Ok(())
}

fn c6_chain_rule<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<MfGolden>("c6_chain_rule.json", out)? else { return Ok(()) };
    let start = Instant::now();
    for case in &g.cases {
        let Some(p) = c.mf(&case.file, out)? else { continue };
        out.eq(&format!("{}: ranks", case.file), (p.rank_k(), p.rank_l()), (case.rank_k, case.rank_l));
        let p = Arc::new(p);
        match chain_rule_checks(&p, &c.budget) {
            Ok(results) => {
                for (i, r) in results.iter().enumerate() {
                    out.check(r.formula, || format!("{}: x{i}: chain-rule boundary differs", case.file));
                    out.check(r.solver_found && r.solver_matches, || {
                        format!("{}: x{i}: solver found no matching certificate", case.file)
                    });
                }
            }
            Err(e) => out.fail(format!("{}: {e}", case.file)),
        }
    }
    out.within("total", start, g.max_seconds);
    Ok(())
}

#[derive(Deserialize)]
struct LmfGolden {
    file: String,
    max_degree: u32,
    jacobian_dims: Vec<usize>,
    subring_dims: Vec<usize>,
    max_seconds: f64,
}

fn lmf_case<F: Field>(c: &Corpus<'_, F>, g: &LmfGolden, out: &mut Outcome) -> Result<(), CorpusError> {
    let start = Instant::now();
    let Some(f) = c.poly(&g.file, out)? else { return Ok(()) };
    let j = match JacobianRing::build_with_budget(&f, &c.budget) {
        Ok(j) => j,
        Err(e) => {
            out.fail(e.to_string());
            return Ok(());
        }
    };
    let cmp = lmf_ring(&f, g.max_degree, &c.budget).and_then(|ring| {
        let cmp = compare_ring(&j, &ring)?;
        out.eq("degree-0 dimension", ring.dims()[0], 1);
        Ok(cmp)
    });
    let cmp = match cmp {
        Ok(cmp) => cmp,
        Err(e) => {
            out.fail(e.to_string());
            return Ok(());
        }
    };
    out.eq("J dims", cmp.jacobian_dims.clone(), g.jacobian_dims.clone());
    out.eq("subring dims", cmp.subring_dims.clone(), g.subring_dims.clone());
    out.eq("injective per degree", cmp.injective.clone(), vec![true; g.max_degree as usize + 1]);
    out.check(cmp.image_in_subring, || "section image leaves the generated subring".into());
    out.check(cmp.multiplicative, || "multiplication tables differ".into());
    out.eq("image ranks equal subring dims", cmp.image_ranks.clone(), cmp.subring_dims.clone());
    out.eq("partials vanish", cmp.partials_vanish, Some(true));
    out.check(cmp.chain_rule_certified, || "chain-rule certificate on Q0 failed".into());
    if let Some(e) = cmp.euler_vanishes {
        out.check(e, || "f does not vanish".into());
    }
    out.within("run", start, g.max_seconds);
    Ok(())
}

fn c7_lmf<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<LmfGolden>("c7_lmf.json", out)? else { return Ok(()) };
    lmf_case(c, &g, out)
}

fn c7_stretch<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<LmfGolden>("c7_lmf_stretch.json", out)? else { return Ok(()) };
    lmf_case(c, &g, out)
}

// ---------------------------------------------------------------- 8

#[derive(Deserialize)]
struct LatticeGolden {
    a2: String,
    a2_negated: String,
    orthogonal_group_order: usize,
    kernel_order: usize,
    image_order: usize,
    cycle_order: usize,
    cycle_det: i64,
    cycle_acts_trivially: bool,
    overlattice: OverlatticeGolden,
    extensions: Vec<ExtensionCase>,
    lifts_per_action: usize,
    max_seconds: f64,
}

#[derive(Deserialize)]
struct OverlatticeGolden {
    rank: usize,
    index: i64,
    even: bool,
    unimodular: bool,
    signature: (usize, usize),
}

#[derive(Deserialize)]
struct ExtensionCase {
    phi: String,
    g: String,
    accepted: bool,
}

fn c8_lattice<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<LatticeGolden>("c8_lattice.json", out)? else { return Ok(()) };
    let start = Instant::now();
    let load = |rel: &str, out: &mut Outcome| -> Result<Option<Lattice>, CorpusError> {
        let p = c.path(rel)?;
        match load_lattice(&p, &c.read(rel)?) {
            Ok(l) => Ok(Some(l)),
            Err(e) => {
                out.fail(format!("{rel}: {e}"));
                Ok(None)
            }
        }
    };
    let (Some(a2), Some(a2n)) = (load(&g.a2, out)?, load(&g.a2_negated, out)?) else { return Ok(()) };
    out.check(a2.gram() == Lattice::a2().gram(), || format!("{} is not the A2 Gram matrix", g.a2));
    out.check(a2n.gram() == &Lattice::a2().gram().neg(), || format!("{} is not A2(-1)", g.a2_negated));

    let result: Result<(), jacfact_core::lattice::LatticeError> = (|| {
        let group = orthogonal_group(&a2)?;
        out.eq("|O(A2)|", group.len(), g.orthogonal_group_order);
        let disc = discriminant_group(&a2)?;
        let id = DiscAutomorphism::identity(&disc);
        let kernel = group.iter().filter(|s| discriminant_action(&disc, s) == id).count();
        out.eq("kernel of the restriction", kernel, g.kernel_order);
        let images: std::collections::BTreeSet<_> = group.iter().map(|s| discriminant_action(&disc, s)).collect();
        let all_auts = [DiscAutomorphism::identity(&disc), DiscAutomorphism::negation(&disc)];
        out.eq("image of the restriction", images.len(), g.image_order);
        out.check(all_auts.iter().all(|a| images.contains(a)), || "restriction is not surjective".into());

        let cyc = degree_shift_isometry();
        out.eq("cycle order", cyc.order(12), Some(g.cycle_order));
        out.eq("cycle det", cyc.det(), g.cycle_det.into());
        out.eq("cycle acts trivially", discriminant_action(&disc, &cyc) == id, g.cycle_acts_trivially);

        let glue = GlueMap::identity(&disc, &discriminant_group(&a2n)?)?;
        let m = overlattice_from_glue(&a2, &a2n, &glue)?;
        let o = &g.overlattice;
        out.eq("overlattice rank", m.lattice.rank(), o.rank);
        out.eq("overlattice index", m.index.clone(), o.index.into());
        out.eq("overlattice even", m.lattice.is_even(), o.even);
        out.eq("overlattice unimodular", m.lattice.is_unimodular(), o.unimodular);
        out.eq("overlattice signature", signature(m.lattice.gram()), o.signature);

        for case in &g.extensions {
            let (phi, gg) = match (isometry_arg(&case.phi, &a2), isometry_arg(&case.g, &a2n)) {
                (Ok(p), Ok(q)) => (p, q),
                _ => {
                    out.fail(format!("unknown isometry in case ({}, {})", case.phi, case.g));
                    continue;
                }
            };
            let accepted = nikulin_extend(&a2, &a2n, &glue, &phi, &gg)?.is_accepted();
            out.eq(&format!("extension ({}, {})", case.phi, case.g), accepted, case.accepted);
        }

        for target in &all_auts {
            match find_orientation_preserving_lift(target)? {
                Some(lift) => {
                    out.eq("lifts per action", lift.all.len(), g.lifts_per_action);
                    out.check(lift.commute_with_cycle, || "a lift does not commute with the cycle".into());
                }
                None => out.fail("no orientation-preserving lift"),
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        out.fail(e.to_string());
    }
    out.within("total", start, g.max_seconds);
    Ok(())
}

// ---------------------------------------------------------------- 9

#[derive(Deserialize)]
struct PropertyGolden {
    seed: u64,
    instances: usize,
    properties: Vec<String>,
}

const PROPERTIES: [&str; 6] = [
    "euler_identity",
    "partials_commute",
    "substitution_functoriality",
    "pairing_transpose_symmetry",
    "hom_basis_independence",
    "composition_well_defined",
];

fn c9_properties<F: Field>(c: &Corpus<'_, F>, out: &mut Outcome) -> Result<(), CorpusError> {
    let Some(g) = c.golden::<PropertyGolden>("c9_properties.json", out)? else { return Ok(()) };
    out.eq(
        "property list",
        g.properties.iter().map(String::as_str).collect::<Vec<_>>(),
        PROPERTIES.to_vec(),
    );
    for (k, name) in PROPERTIES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed.wrapping_add(k as u64));
        let mut failures = 0;
        let mut first = None;
        for i in 0..g.instances {
            let r = match *name {
                "euler_identity" => prop_euler(c.field, &mut rng),
                "partials_commute" => prop_partials_commute(c.field, &mut rng),
                "substitution_functoriality" => prop_substitution(c.field, &mut rng),
                "pairing_transpose_symmetry" => prop_pairing(c.field, &mut rng, &c.budget),
                "hom_basis_independence" => prop_hom_basis(c.field, &mut rng, &c.budget),
                _ => prop_composition(c.field, &mut rng, &c.budget),
            };
            if let Err(e) = r {
                failures += 1;
                first.get_or_insert(format!("instance {i}: {e}"));
            }
        }
        out.check(failures == 0, || {
            format!("{name}: {failures} of {} failed; {}", g.instances, first.unwrap_or_default())
        });
    }
    Ok(())
}

fn random_form<F: Field>(field: F, rng: &mut ChaCha8Rng, n: usize, d: u32, span: i64) -> Polynomial<F> {
    let terms = monomial_basis(n, d)
        .into_iter()
        .map(|m| (m, field.from_i64(rng.gen_range(-span..=span))));
    Polynomial::from_terms(field, n, terms)
}

fn random_matrix<F: Field>(field: F, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n)
        .map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect())
        .collect()
}

fn mat_mul<F: Field>(field: F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

type PropResult = Result<(), String>;

fn prop_euler<F: Field>(field: F, rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(0..=5);
    let f = random_form(field, rng, n, d, 5);
    let mut lhs = Polynomial::zero(field, n);
    for i in 0..n {
        let di = f.partial_derivative(i).map_err(|e| e.to_string())?;
        lhs = lhs.add(&Polynomial::var(field, i, n).mul(&di));
    }
    let rhs = f.scale(&field.from_i64(d as i64));
    (lhs == rhs).then_some(()).ok_or_else(|| format!("Euler fails for {}", f.render()))
}

fn prop_partials_commute<F: Field>(field: F, rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(2..=4);
    let d = rng.gen_range(0..=6);
    let f = random_form(field, rng, n, d, 5);
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let a = f.partial_derivative(i).and_then(|p| p.partial_derivative(j));
    let b = f.partial_derivative(j).and_then(|p| p.partial_derivative(i));
    (a == b).then_some(()).ok_or_else(|| format!("d{i}d{j} differs for {}", f.render()))
}

fn prop_substitution<F: Field>(field: F, rng: &mut ChaCha8Rng) -> PropResult {
    let n = rng.gen_range(2..=3);
    let d = rng.gen_range(1..=4);
    let f = random_form(field, rng, n, d, 4);
    let (m, k) = (random_matrix(field, rng, n), random_matrix(field, rng, n));
    let err = |e: jacfact_core::poly::PolyError| e.to_string();
    // p(Mx) semantics: substituting K and then M gives p(KMx)
    let lhs = f.linear_substitute(&mat_mul(field, &k, &m)).map_err(err)?;
    let rhs = f.linear_substitute(&k).map_err(err)?.linear_substitute(&m).map_err(err)?;
    if lhs != rhs {
        return Err(format!("composition law fails for {}", f.render()));
    }
    // chain rule: ∂_i(f∘M) = Σ_j M[j][i]·(∂_j f)∘M
    let fm = f.linear_substitute(&m).map_err(err)?;
    for i in 0..n {
        let mut sum = Polynomial::zero(field, n);
        for (j, row) in m.iter().enumerate() {
            let dj = f.partial_derivative(j).map_err(err)?.linear_substitute(&m).map_err(err)?;
            sum = sum.add(&dj.scale(&row[i]));
        }
        if fm.partial_derivative(i).map_err(err)? != sum {
            return Err(format!("chain rule fails in x{i} for {}", f.render()));
        }
    }
    Ok(())
}

/// Fermat plus a small random perturbation, resampled until smooth.
fn random_smooth<F: Field>(field: F, rng: &mut ChaCha8Rng, budget: &Budget) -> Result<JacobianRing<F>, String> {
    loop {
        let n = rng.gen_range(2..=3);
        let d = rng.gen_range(3..=4);
        let mut f = random_form(field, rng, n, d, 1);
        let keep = rng.gen_range(0..=3);
        let small: Vec<_> = f.terms().map(|(m, c)| (m.clone(), c.clone())).take(keep).collect();
        f = Polynomial::from_terms(field, n, small);
        for i in 0..n {
            f = f.add(&Polynomial::var(field, i, n).pow(d));
        }
        let j = JacobianRing::build_with_budget(&f, budget).map_err(|e| e.to_string())?;
        if j.is_smooth() {
            return Ok(j);
        }
    }
}

fn prop_pairing<F: Field>(field: F, rng: &mut ChaCha8Rng, budget: &Budget) -> PropResult {
    let j = random_smooth(field, rng, budget)?;
    let sigma = j.sigma();
    let l = rng.gen_range(0..=sigma);
    let a = j.pairing_matrix(l).map_err(|e| e.to_string())?;
    let b = j.pairing_matrix(sigma - l).map_err(|e| e.to_string())?;
    let transposed = (0..b.matrix.first().map_or(0, Vec::len))
        .map(|c| b.matrix.iter().map(|row| row[c].clone()).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    let ok = a.matrix == transposed || (a.matrix.is_empty() && b.matrix.is_empty());
    ok.then_some(())
        .ok_or_else(|| format!("pairing {l} is not the transpose of pairing {} for {}", sigma - l, j.polynomial().render()))
}

/// Koszul factorization of `Σ a_i·b_i` with random linear `a_i`.
fn random_koszul<F: Field>(field: F, rng: &mut ChaCha8Rng) -> MatrixFactorization<F> {
    loop {
        let n = rng.gen_range(2..=3);
        let d = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=2);
        let pairs: Vec<_> = (0..k)
            .map(|_| (random_form(field, rng, n, 1, 2), random_form(field, rng, n, d - 1, 2)))
            .collect();
        let f = pairs
            .iter()
            .fold(Polynomial::zero(field, n), |acc, (a, b)| acc.add(&a.mul(b)));
        if let Ok(p) = koszul_mf(&f, &pairs) {
            return p;
        }
    }
}

fn prop_hom_basis<F: Field>(field: F, rng: &mut ChaCha8Rng, budget: &Budget) -> PropResult {
    let p = random_koszul(field, rng);
    let l = rng.gen_range(0..=2);
    let mut perm: Vec<usize> = (0..p.num_vars()).collect();
    perm.shuffle(rng);
    let q = Arc::new(p.rename_vars(&perm));
    let p = Arc::new(p);
    let a = hom_space(&p, &p, l, budget).map_err(|e| e.to_string())?;
    let b = hom_space(&q, &q, l, budget).map_err(|e| e.to_string())?;
    (a.dim() == b.dim() && a.closed_dim == b.closed_dim)
        .then_some(())
        .ok_or_else(|| format!("dims {} vs {} under {perm:?}", a.dim(), b.dim()))
}

fn prop_composition<F: Field>(field: F, rng: &mut ChaCha8Rng, budget: &Budget) -> PropResult {
    let p = Arc::new(random_koszul(field, rng));
    let (la, lb) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
    let err = |e: jacfact_core::mf::MfError| e.to_string();
    let ha = hom_space(&p, &p, la, budget).map_err(err)?;
    let hb = hom_space(&p, &p, lb, budget).map_err(err)?;
    let hab = hom_space(&p, &p, la + lb, budget).map_err(err)?;
    let mut coords = |n: usize| -> Vec<F::Elem> { (0..n).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect() };
    let x = ha.morphism_from_class(&coords(ha.dim()));
    let y = hb.morphism_from_class(&coords(hb.dim()));
    let base = hab.class_of(&x.then(&y).map_err(err)?).map_err(err)?;
    let mut noise = || field.from_i64(rng.gen_range(-3..=3));
    let x2 = x.add(&ha.boundary_combination(|_| noise())).map_err(err)?;
    let y2 = y.add(&hb.boundary_combination(|_| noise())).map_err(err)?;
    let moved = hab.class_of(&x2.then(&y2).map_err(err)?).map_err(err)?;
    (base == moved)
        .then_some(())
        .ok_or_else(|| "composite class changed under a boundary perturbation".to_string())
}
