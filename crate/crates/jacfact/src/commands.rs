use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use jacfact_core::jacobian::{hilbert_series_oracle, JacobianError, JacobianRing, PairingCertificate};
use jacfact_core::lattice::{
    a2_swap, degree_shift_isometry, discriminant_action, discriminant_group, find_orientation_preserving_lift,
    nikulin_extend, orientation_sign, orthogonal_group, overlattice_from_glue, signature, standard_positive_basis,
    DiscAutomorphism, ExtendOutcome, GlueMap, Isometry, Lattice, LatticeError,
};
use jacfact_core::mf::{
    chain_rule_homotopy, compare_ring, hom_space, is_null_homotopic, koszul_mf, lmf_ring, mult_by_section_twisted,
    stabilized_diagonal, variable_decomposition, MatrixFactorization, MfError, MfMorphism, PolyMatrix,
};
use jacfact_core::{Field, FieldConfig, Monomial, Polynomial, PrimeField, Rationals};

use crate::formats::{
    parse_int_rows, parse_mf_file, parse_poly_file, render_int_matrix, render_mf_file, render_poly_file, FormatError,
};
use crate::report::{Report, RunConfig, Status};

/// A failure that prevents a report from being produced.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl CommandError {
    pub fn status(&self) -> Status {
        match self {
            CommandError::Input(_) => Status::Input,
            CommandError::Resource(_) => Status::Resource,
        }
    }
}

impl From<FormatError> for CommandError {
    fn from(e: FormatError) -> Self {
        CommandError::Input(e.to_string())
    }
}

impl From<JacobianError> for CommandError {
    fn from(e: JacobianError) -> Self {
        match e {
            JacobianError::Resource(_) => CommandError::Resource(e.to_string()),
            other => CommandError::Input(other.to_string()),
        }
    }
}

impl From<MfError> for CommandError {
    fn from(e: MfError) -> Self {
        match e {
            MfError::Resource(_) | MfError::ResourceAt { .. } | MfError::Jacobian(JacobianError::Resource(_)) => {
                CommandError::Resource(e.to_string())
            }
            other => CommandError::Input(other.to_string()),
        }
    }
}

impl From<LatticeError> for CommandError {
    fn from(e: LatticeError) -> Self {
        CommandError::Input(e.to_string())
    }
}

pub type CommandResult = Result<Report, CommandError>;

pub fn read_file(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path).map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

/// Runs `body` with the field chosen in `cfg`.
macro_rules! with_field {
    ($cfg:expr, $f:ident => $body:expr) => {
        match $cfg.field {
            FieldConfig::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldConfig::Prime(p) => {
                let $f: PrimeField = p;
                $body
            }
        }
    };
}

// ---------------------------------------------------------------- helpers

fn elems<F: Field>(field: F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(field.render(x))).collect())
}

fn monomial_text<F: Field>(field: F, m: &Monomial) -> String {
    Polynomial::monomial(field, field.one(), m.clone()).render()
}

fn monomials<F: Field>(field: F, ms: &[Monomial]) -> Value {
    Value::Array(ms.iter().map(|m| Value::String(monomial_text(field, m))).collect())
}

/// Nonzero entries as `[row, col, "poly"]`.
fn sparse_matrix<F: Field>(m: &PolyMatrix<F>) -> Value {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let p = m.get(r, c);
            if !p.is_zero() {
                out.push(json!([r, c, p.render()]));
            }
        }
    }
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": out })
}

fn morphism_json<F: Field>(m: &MfMorphism<F>) -> Value {
    json!({ "twist": m.twist, "g": sparse_matrix(&m.g), "h": sparse_matrix(&m.h) })
}

fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn rat(x: &BigRational) -> Value {
    Value::String(jacfact_core::field::render_rational(x))
}

fn rats(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn int_matrix(m: &jacfact_core::lattice::IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| bigs(m.row(r))).collect())
}

fn pairing_json<F: Field>(field: F, c: &PairingCertificate<F>) -> Value {
    json!({
        "degree": c.degree,
        "complementary_degree": c.complementary_degree,
        "row_basis": monomials(field, &c.row_basis),
        "col_basis": monomials(field, &c.col_basis),
        "socle": monomial_text(field, &c.socle),
        "matrix": c.matrix.iter().map(|row| elems(field, row)).collect::<Vec<_>>(),
        "rank": c.rank,
        "nondegenerate": c.nondegenerate,
    })
}

// ---------------------------------------------------------------- jacring

pub fn jacring(argv: &[String], cfg: &RunConfig, text: &str) -> CommandResult {
    with_field!(cfg, field => jacring_in(field, argv, cfg, text))
}

fn jacring_in<F: Field>(field: F, argv: &[String], cfg: &RunConfig, text: &str) -> CommandResult {
    let f = parse_poly_file(text, field)?;
    let mut report = Report::new(argv, &render_poly_file(&f), cfg.field);
    let j = JacobianRing::build_with_budget(&f, &cfg.budget)?;
    let (n, d, sigma) = (j.num_vars(), j.degree(), j.sigma());
    report.push(
        "hilbert_function",
        Status::Info,
        json!({
            "num_vars": n,
            "degree": d,
            "sigma": sigma,
            "computed_up_to": j.max_degree(),
            "hilbert_function": j.hilbert_function(),
        }),
    );
    report.pass_if(
        "socle_degree",
        sigma as usize == n * (d as usize - 2),
        json!({ "sigma": sigma, "expected": n * (d as usize - 2) }),
    );
    let smooth = j.is_smooth();
    report.push(
        "smooth",
        if smooth { Status::Pass } else { Status::Info },
        json!({ "smooth": smooth }),
    );
    if !smooth {
        return Ok(report);
    }
    let oracle = hilbert_series_oracle(n, d);
    let computed: Vec<u64> = j.hilbert_function().iter().map(|&x| x as u64).collect();
    report.pass_if(
        "hilbert_oracle",
        computed == oracle,
        json!({ "oracle": oracle, "computed": computed }),
    );
    match j.gorenstein_report() {
        Ok(g) => {
            report.pass_if(
                "top_degree",
                true,
                json!({
                    "sigma": g.sigma,
                    "dim_sigma": j.dim(sigma),
                    "above": ((sigma + 1)..=(sigma + d)).map(|l| j.dim(l)).collect::<Vec<_>>(),
                    "socle": monomial_text(field, &g.socle),
                }),
            );
            let certs: Vec<Value> = g.certificates.iter().map(|c| pairing_json(field, c)).collect();
            report.pass_if(
                "pairing",
                g.certificates.iter().all(|c| c.nondegenerate),
                Value::Array(certs),
            );
        }
        Err(JacobianError::Gorenstein(v)) => report.push("gorenstein", Status::Fail, json!(v.to_string())),
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

// ---------------------------------------------------------------- mf

/// Which object a `.poly` input stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum MfObject {
    /// Koszul factorization of the split `f = Σ x_i·q_i`.
    #[default]
    Koszul,
    /// Stabilized diagonal of `f(y) - f(x)`.
    Diagonal,
}

/// An `.mf` file is read as is; anything else is a polynomial turned into
/// the requested object.
pub fn load_mf<F: Field>(field: F, path: &Path, text: &str, object: MfObject) -> Result<MatrixFactorization<F>, CommandError> {
    if path.extension().is_some_and(|e| e == "mf") {
        return Ok(parse_mf_file(text, field)?);
    }
    let f = parse_poly_file(text, field)?;
    Ok(match object {
        MfObject::Koszul => koszul_mf(&f, &variable_decomposition(&f))?,
        MfObject::Diagonal => stabilized_diagonal(&f)?,
    })
}

fn object_json<F: Field>(p: &MatrixFactorization<F>) -> Value {
    json!({
        "potential": p.potential().render(),
        "num_vars": p.num_vars(),
        "rank_k": p.rank_k(),
        "rank_l": p.rank_l(),
        "twists_k": p.twists_k().0,
        "twists_l": p.twists_l().0,
    })
}

pub fn mf_export(cfg: &RunConfig, path: &Path, text: &str, object: MfObject) -> Result<String, CommandError> {
    with_field!(cfg, field => Ok(render_mf_file(&load_mf(field, path, text, object)?)))
}

pub fn mf_validate(argv: &[String], cfg: &RunConfig, path: &Path, text: &str, object: MfObject) -> CommandResult {
    with_field!(cfg, field => {
        let p = load_mf(field, path, text, object)?;
        let mut report = Report::new(argv, &render_mf_file(&p), cfg.field);
        report.push("object", Status::Info, object_json(&p));
        validation_checks(&mut report, &p);
        Ok(report)
    })
}

fn validation_checks<F: Field>(report: &mut Report, p: &MatrixFactorization<F>) {
    match p.validate() {
        Ok(()) => report.pass_if("validate", true, json!("ok")),
        Err(v) => report.push("validate", Status::Fail, json!(v.to_string())),
    }
    match p.shift().validate() {
        Ok(()) => report.pass_if("validate_shift", true, json!("ok")),
        Err(v) => report.push("validate_shift", Status::Fail, json!(v.to_string())),
    }
}

pub fn mf_shift_check(argv: &[String], cfg: &RunConfig, path: &Path, text: &str, object: MfObject) -> CommandResult {
    with_field!(cfg, field => {
        let p = load_mf(field, path, text, object)?;
        let mut report = Report::new(argv, &render_mf_file(&p), cfg.field);
        validation_checks(&mut report, &p);
        let d = p.degree() as i64;
        let s = p.shift();
        report.pass_if(
            "shift_twice_is_degree_shift",
            s.shift() == p.degree_shift(d),
            json!({ "d": d, "shift": object_json(&s), "shift_twice": object_json(&s.shift()) }),
        );
        report.pass_if("degree_shift_zero", p.degree_shift(0) == p, json!(null));
        report.pass_if(
            "degree_shift_additive",
            p.degree_shift(1).degree_shift(2) == p.degree_shift(3),
            json!(null),
        );
        Ok(report)
    })
}

pub fn mf_chainrule(argv: &[String], cfg: &RunConfig, path: &Path, text: &str, object: MfObject) -> CommandResult {
    with_field!(cfg, field => {
        let p = load_mf(field, path, text, object)?;
        let mut report = Report::new(argv, &render_mf_file(&p), cfg.field);
        if let Err(v) = p.validate() {
            report.push("validate", Status::Fail, json!(v.to_string()));
            return Ok(report);
        }
        let p = Arc::new(p);
        for (i, outcome) in chain_rule_checks(&p, &cfg.budget)?.into_iter().enumerate() {
            let ChainRuleOutcome { section, formula, solver_found, solver_matches, homotopy } = outcome;
            report.pass_if(
                format!("chain_rule[x{i}]"),
                formula && solver_found && solver_matches,
                json!({
                    "section": section,
                    "boundary_equals_section": formula,
                    "solver_found_certificate": solver_found,
                    "solver_boundary_equals_section": solver_matches,
                    "homotopy": homotopy,
                }),
            );
        }
        Ok(report)
    })
}

pub struct ChainRuleOutcome {
    pub section: String,
    /// `∂(chain-rule homotopy) = ∂_i f`.
    pub formula: bool,
    pub solver_found: bool,
    pub solver_matches: bool,
    pub homotopy: Value,
}

pub fn chain_rule_checks<F: Field>(
    p: &Arc<MatrixFactorization<F>>,
    budget: &jacfact_core::Budget,
) -> Result<Vec<ChainRuleOutcome>, CommandError> {
    let d = p.degree() as i64;
    let mut out = Vec::new();
    for i in 0..p.num_vars() {
        let df = p.potential().partial_derivative(i).map_err(|e| CommandError::Input(e.to_string()))?;
        let h = chain_rule_homotopy(p, i)?;
        let m = mult_by_section_twisted(p, &df, d - 1)?;
        let solved = is_null_homotopic(&m, budget)?;
        out.push(ChainRuleOutcome {
            section: df.render(),
            formula: h.boundary() == m,
            solver_found: solved.is_some(),
            solver_matches: solved.is_some_and(|s| s.boundary() == m),
            homotopy: json!({ "twist": h.twist, "s": sparse_matrix(&h.s), "t": sparse_matrix(&h.t) }),
        });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn mf_hom(
    argv: &[String],
    cfg: &RunConfig,
    path: &Path,
    text: &str,
    target: Option<(&Path, &str)>,
    twist: i64,
    object: MfObject,
) -> CommandResult {
    with_field!(cfg, field => {
        let p = Arc::new(load_mf(field, path, text, object)?);
        let q = match target {
            Some((tp, tt)) => Arc::new(load_mf(field, tp, tt, object)?),
            None => p.clone(),
        };
        let canonical = format!("{}{}twist: {twist}\n", render_mf_file(&p), render_mf_file(&q));
        let mut report = Report::new(argv, &canonical, cfg.field);
        let h = hom_space(&p, &q, twist, &cfg.budget)?;
        report.push(
            "hom",
            Status::Pass,
            json!({
                "twist": twist,
                "dim": h.dim(),
                "closed_dim": h.closed_dim,
                "boundary_rank": h.boundary_rank,
                "basis": h.basis().iter().map(morphism_json).collect::<Vec<_>>(),
            }),
        );
        Ok(report)
    })
}

pub fn mf_lmf(argv: &[String], cfg: &RunConfig, text: &str) -> CommandResult {
    with_field!(cfg, field => {
        let f = parse_poly_file(text, field)?;
        let n = cfg.max_degree;
        let mut report = Report::new(argv, &format!("{}degree: {n}\n", render_poly_file(&f)), cfg.field);
        let j = JacobianRing::build_with_budget(&f, &cfg.budget)?;
        let ring = lmf_ring(&f, n, &cfg.budget)?;
        let cmp = compare_ring(&j, &ring)?;
        let table: Vec<Value> = ring
            .multiplication_table()?
            .into_iter()
            .map(|(a, i, b, k, c)| json!([a, i, b, k, elems(field, &c)]))
            .collect();
        report.push(
            "lmf",
            Status::Info,
            json!({
                "max_degree": n,
                "lmf_dims": cmp.lmf_dims,
                "jacobian_dims": cmp.jacobian_dims,
                "multiplication_table": table,
            }),
        );
        report.pass_if(
            "section_map_injective",
            cmp.injective.iter().all(|b| *b),
            json!({ "image_ranks": cmp.image_ranks, "injective": cmp.injective }),
        );
        report.pass_if(
            "subring_matches_jacobian",
            cmp.is_isomorphism_onto_subring(),
            json!({
                "subring_dims": cmp.subring_dims,
                "image_in_subring": cmp.image_in_subring,
                "multiplicative": cmp.multiplicative,
            }),
        );
        if let Some(ok) = cmp.partials_vanish {
            report.pass_if("partials_vanish", ok, json!({ "degree": f.homogeneous_degree().map(|d| d - 1) }));
        }
        report.pass_if("chain_rule_certified", cmp.chain_rule_certified, json!(null));
        if let Some(ok) = cmp.euler_vanishes {
            report.pass_if("potential_vanishes", ok, json!({ "degree": f.homogeneous_degree() }));
        }
        Ok(report)
    })
}

// ---------------------------------------------------------------- lattice

pub fn load_lattice(path: &Path, text: &str) -> Result<Lattice, CommandError> {
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("L");
    Ok(Lattice::from_rows(&parse_int_rows(text)?, label)?)
}

/// `id`, `neg-id`, `cycle` (the order-3 isometry of `A_2`), `swap`, or a
/// matrix file.
pub fn isometry_arg(name: &str, lattice: &Lattice) -> Result<Isometry, CommandError> {
    let r = lattice.rank();
    let m = match name {
        "id" => Isometry::identity(r),
        "neg-id" => Isometry::negation(r),
        "cycle" | "swap" if r != 2 => {
            return Err(CommandError::Input(format!("`{name}` needs a rank-2 lattice")));
        }
        "cycle" => degree_shift_isometry(),
        "swap" => a2_swap(),
        file => {
            let rows = parse_int_rows(&read_file(Path::new(file))?)?;
            return Ok(Isometry::from_rows(lattice, &rows)?);
        }
    };
    Ok(Isometry::new(lattice, m.matrix().clone())?)
}

pub fn lattice_disc(argv: &[String], cfg: &RunConfig, path: &Path, text: &str) -> CommandResult {
    let l = load_lattice(path, text)?;
    let mut report = Report::new(argv, &render_int_matrix(l.gram()), cfg.field);
    let a = discriminant_group(&l)?;
    let order = a.order();
    let det = l.det();
    let mut payload = json!({
        "det": big(&det),
        "invariant_factors": bigs(a.invariant_factors()),
        "order": big(&order),
        "generators": a.generators().iter().map(|g| rats(g)).collect::<Vec<_>>(),
        "b_on_generators": (0..a.invariant_factors().len()).map(|i| {
            (0..a.invariant_factors().len()).map(|k| {
                let (ei, ek) = (unit(a.invariant_factors().len(), i), unit(a.invariant_factors().len(), k));
                rat(&a.b(&ei, &ek))
            }).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    });
    if order <= BigInt::from(256) {
        payload["q_values"] = a
            .elements()
            .iter()
            .map(|e| json!({ "element": bigs(e), "q": rat(&a.q(e)) }))
            .collect();
    }
    report.push("discriminant", Status::Info, payload);
    report.pass_if(
        "order_is_abs_det",
        order == num_traits::Signed::abs(&det),
        json!({ "order": big(&order), "det": big(&det) }),
    );
    Ok(report)
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    (0..n).map(|k| BigInt::from((k == i) as i32)).collect()
}

pub fn lattice_ogroup(argv: &[String], cfg: &RunConfig, path: &Path, text: &str) -> CommandResult {
    let l = load_lattice(path, text)?;
    let mut report = Report::new(argv, &render_int_matrix(l.gram()), cfg.field);
    let group = orthogonal_group(&l)?;
    let set: std::collections::BTreeSet<_> = group.iter().cloned().collect();
    let closed = group.iter().all(|a| group.iter().all(|b| set.contains(&a.compose(b))));
    let disc = discriminant_group(&l)?;
    let id = DiscAutomorphism::identity(&disc);
    let kernel = group.iter().filter(|s| discriminant_action(&disc, s) == id).count();
    let images: std::collections::BTreeSet<_> = group.iter().map(|s| discriminant_action(&disc, s)).collect();
    report.push(
        "orthogonal_group",
        Status::Info,
        json!({
            "order": group.len(),
            "elements": group.iter().map(|g| int_matrix(g.matrix())).collect::<Vec<_>>(),
        }),
    );
    report.pass_if("closed_under_composition", closed, json!(null));
    report.push(
        "discriminant_restriction",
        Status::Info,
        json!({ "kernel_order": kernel, "image_order": images.len() }),
    );
    Ok(report)
}

/// `identity` glues generator `k` to generator `k`; `trivial` is the zero
/// subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum GlueKind {
    #[default]
    Identity,
    Trivial,
}

fn glue_map(kind: GlueKind, l1: &Lattice, l2: &Lattice) -> Result<GlueMap, CommandError> {
    Ok(match kind {
        GlueKind::Identity => GlueMap::identity(&discriminant_group(l1)?, &discriminant_group(l2)?)?,
        GlueKind::Trivial => GlueMap::trivial(),
    })
}

fn two_lattice_input(l1: &Lattice, l2: &Lattice, extra: &str) -> String {
    format!("{}--\n{}{extra}", render_int_matrix(l1.gram()), render_int_matrix(l2.gram()))
}

pub fn lattice_glue(argv: &[String], cfg: &RunConfig, l1: &Lattice, l2: &Lattice, kind: GlueKind) -> CommandResult {
    let mut report = Report::new(argv, &two_lattice_input(l1, l2, &format!("glue: {kind:?}\n")), cfg.field);
    let glue = glue_map(kind, l1, l2)?;
    match overlattice_from_glue(l1, l2, &glue) {
        Ok(m) => {
            let g = m.lattice.gram();
            let (pos, neg) = signature(g);
            let index_sq = &m.index * &m.index;
            report.push(
                "overlattice",
                Status::Pass,
                json!({
                    "gram": int_matrix(g),
                    "rank": m.lattice.rank(),
                    "index": big(&m.index),
                    "graph_order": m.graph_order,
                    "det": big(&m.lattice.det()),
                    "even": m.lattice.is_even(),
                    "unimodular": m.lattice.is_unimodular(),
                    "signature": [pos, neg],
                }),
            );
            report.pass_if(
                "det_formula",
                m.lattice.det() * &index_sq == l1.det() * l2.det() && m.index == BigInt::from(m.graph_order),
                json!(null),
            );
        }
        Err(LatticeError::NotIsotropic { element, q }) => {
            report.push("overlattice", Status::Rejected, json!({ "non_isotropic_element": element, "q": q }));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

pub fn lattice_extend(
    argv: &[String],
    cfg: &RunConfig,
    l1: &Lattice,
    l2: &Lattice,
    kind: GlueKind,
    phi: &str,
    g: &str,
) -> CommandResult {
    let extra = format!("glue: {kind:?}\nphi: {phi}\ng: {g}\n");
    let mut report = Report::new(argv, &two_lattice_input(l1, l2, &extra), cfg.field);
    let glue = glue_map(kind, l1, l2)?;
    let (phi_m, g_m) = (isometry_arg(phi, l1)?, isometry_arg(g, l2)?);
    match nikulin_extend(l1, l2, &glue, &phi_m, &g_m)? {
        ExtendOutcome::Accepted { overlattice, isometry } => report.push(
            "extension",
            Status::Pass,
            json!({
                "overlattice_gram": int_matrix(overlattice.lattice.gram()),
                "isometry": int_matrix(isometry.matrix()),
            }),
        ),
        ExtendOutcome::Rejected(r) => report.push(
            "extension",
            Status::Rejected,
            json!({
                "element": bigs(&r.element),
                "glue_of_phi_image": r.via_phi.as_deref().map(bigs),
                "g_of_glue_image": bigs(&r.via_g),
            }),
        ),
    }
    Ok(report)
}

fn parse_rational_rows(text: &str) -> Result<Vec<Vec<BigRational>>, CommandError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigRational>()
                    .map_err(|_| CommandError::Input(format!("line {}: bad rational `{t}`", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn lattice_orient(
    argv: &[String],
    cfg: &RunConfig,
    l: &Lattice,
    sigma: &str,
    basis: Option<&str>,
) -> CommandResult {
    let basis = match basis {
        Some(text) => parse_rational_rows(text)?,
        None => standard_positive_basis(l).ok_or_else(|| {
            CommandError::Input("lattice is not positive definite; pass --basis".to_string())
        })?,
    };
    let extra = format!(
        "sigma: {sigma}\nbasis: {}\n",
        basis.iter().map(|v| rats(v).to_string()).collect::<Vec<_>>().join(" ")
    );
    let mut report = Report::new(argv, &format!("{}{extra}", render_int_matrix(l.gram())), cfg.field);
    let s = isometry_arg(sigma, l)?;
    let sign = orientation_sign(l, &s, &basis)?;
    report.push("orientation", Status::Info, json!({ "sign": sign, "det": big(&s.det()) }));
    Ok(report)
}

/// Target action on `A_{A_2} ≅ Z/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DiscActionArg {
    Id,
    Neg,
}

pub fn lattice_lift(argv: &[String], cfg: &RunConfig, action: DiscActionArg) -> CommandResult {
    let a2 = Lattice::a2();
    let mut report = Report::new(argv, &format!("{}action: {action:?}\n", render_int_matrix(a2.gram())), cfg.field);
    let disc = discriminant_group(&a2)?;
    let target = match action {
        DiscActionArg::Id => DiscAutomorphism::identity(&disc),
        DiscActionArg::Neg => DiscAutomorphism::negation(&disc),
    };
    match find_orientation_preserving_lift(&target)? {
        Some(lift) => {
            report.pass_if(
                "lift",
                lift.commute_with_cycle,
                json!({
                    "chosen": int_matrix(lift.chosen.matrix()),
                    "all": lift.all.iter().map(|g| int_matrix(g.matrix())).collect::<Vec<_>>(),
                    "commute_with_cycle": lift.commute_with_cycle,
                }),
            );
        }
        None => report.push("lift", Status::Fail, json!("no orientation-preserving lift")),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv() -> Vec<String> {
        vec!["test".to_string()]
    }

    #[test]
    fn jacring_fermat_binary_quartic() {
        let r = jacring(&argv(), &RunConfig::default(), "x0^4 + x1^4").unwrap();
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.checks[0].payload["hilbert_function"], json!([1, 2, 3, 2, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn singular_input_is_reported_not_failed() {
        let r = jacring(&argv(), &RunConfig::default(), "vars: 3\nx0^3 + x1^3").unwrap();
        assert_eq!(r.exit_code(), 0);
        assert!(r.checks.iter().all(|c| c.name != "pairing"));
    }

    #[test]
    fn chain_rule_on_cubic() {
        let cfg = RunConfig::default();
        let r = mf_chainrule(&argv(), &cfg, Path::new("f.poly"), "x0^3 + x1^3", MfObject::Koszul).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.checks.len(), 2);
    }

    #[test]
    fn extension_rejection_exits_one() {
        let a2 = Lattice::a2();
        let r = lattice_extend(&argv(), &RunConfig::default(), &a2, &a2.negated(), GlueKind::Identity, "id", "neg-id")
            .unwrap();
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn tiny_budget_is_a_resource_error() {
        let mut cfg = RunConfig::default();
        cfg.budget.max_cells = 10;
        let e = jacring(&argv(), &cfg, "x0^3 + x1^3 + x2^3").unwrap_err();
        assert_eq!(e.status(), Status::Resource);
    }
}
