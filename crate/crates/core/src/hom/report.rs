use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::blocks::{contingency_count, h_algebra, theta_cell, IdealBlock, ThetaCell};
use super::cache::{hom_space_from_json, hom_space_to_json, CacheKey, HomCache, NoCache};
use super::lemma::{lemma1_on_blocks, lie_blocks, OpsChoice};
use super::semisimple::semisimple_report;
use super::transport::{corner_hom, xi_on_blocks, XiReport};
use super::HomError;
use crate::algebra::{AlgebraElt, CycleChoice, GroupAlgebra, IdempotentKind, Side};
use crate::combinatorics::{Composition, Permutation};
use crate::field::{CyclotomicField, Field, FieldCtx, FieldSpec};
use crate::linalg::HomSpace;
use crate::tensor::{bracket_oracle, merge_blocks, witt_dimension, TensorSpace, WeightSpace};
use crate::with_field;

pub const CSV_HEADER: [&str; 7] = [
    "alpha",
    "beta",
    "field",
    "dim_hom_sigma",
    "dim_hom_H",
    "dim_theta_image",
    "surjective",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Guaranteed by theory in this regime; failure is a bug.
    Asserted,
    /// Outcome is data, not an expectation.
    Experimental,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl From<bool> for CheckStatus {
    fn from(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub kind: CheckKind,
    pub expected: Value,
    pub computed: Value,
    pub status: CheckStatus,
}

impl CheckRecord {
    fn new(name: &str, anchor: &str, kind: CheckKind, expected: Value, computed: Value, ok: bool) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            kind,
            expected,
            computed,
            status: ok.into(),
        }
    }
}

/// Which groups of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckSet {
    pub relations: bool,
    pub lie: bool,
    pub lemma1: bool,
    pub theta: bool,
    pub semisimple: bool,
    pub fieldindep: bool,
}

impl CheckSet {
    pub const NAMES: [&'static str; 6] = ["relations", "lie", "lemma1", "theta", "semisimple", "fieldindep"];

    pub fn all() -> Self {
        Self {
            relations: true,
            lie: true,
            lemma1: true,
            theta: true,
            semisimple: true,
            fieldindep: true,
        }
    }

    pub fn none() -> Self {
        Self {
            relations: false,
            lie: false,
            lemma1: false,
            theta: false,
            semisimple: false,
            fieldindep: false,
        }
    }

    /// Comma-separated names from [`CheckSet::NAMES`] or `all`.
    pub fn parse(input: &str) -> Result<Self, String> {
        let mut set = Self::none();
        for name in input.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "all" => set = Self::all(),
                "relations" => set.relations = true,
                "lie" => set.lie = true,
                "lemma1" => set.lemma1 = true,
                "theta" => set.theta = true,
                "semisimple" => set.semisimple = true,
                "fieldindep" => set.fieldindep = true,
                other => {
                    return Err(format!(
                        "unknown check {other:?}; expected a comma list of {} or all",
                        Self::NAMES.join(", ")
                    ))
                }
            }
        }
        if set == Self::none() {
            return Err("no checks selected".into());
        }
        Ok(set)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let flags = [self.relations, self.lie, self.lemma1, self.theta, self.semisimple, self.fieldindep];
        Self::NAMES.iter().zip(flags).filter(|(_, on)| *on).map(|(n, _)| *n).collect()
    }
}

impl Default for CheckSet {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Clone, Copy)]
pub struct VerifyOptions<'a> {
    pub checks: CheckSet,
    /// The r-cycle `γ`; `None` means `(2, 3, …, r, 1)`.
    pub gamma: Option<&'a Permutation>,
    pub ops: OpsChoice,
    pub cache: &'a dyn HomCache,
}

impl Default for VerifyOptions<'_> {
    fn default() -> Self {
        Self {
            checks: CheckSet::all(),
            gamma: None,
            ops: OpsChoice::Auto,
            cache: &NoCache,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub r: usize,
    pub field: String,
    pub idempotent: IdempotentKind,
    pub gamma: Vec<u8>,
    pub zeta: String,
    /// `semisimple` when the characteristic is 0 or exceeds r, else `open`.
    pub regime: String,
    pub checks: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub alpha: String,
    pub beta: String,
    pub field: String,
    pub dim_hom_sigma: usize,
    #[serde(rename = "dim_hom_H")]
    pub dim_hom_h: usize,
    pub dim_theta_image: usize,
    pub surjective: bool,
}

impl MatrixRow {
    fn new(alpha: &Composition, beta: &Composition, field: &str, cell: &ThetaCell) -> Self {
        Self {
            alpha: alpha.csv_label(),
            beta: beta.csv_label(),
            field: field.into(),
            dim_hom_sigma: cell.dim_hom_sigma,
            dim_hom_h: cell.dim_hom_x,
            dim_theta_image: cell.dim_image,
            surjective: cell.surjective,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportMatrix {
    pub columns: Vec<&'static str>,
    pub rows: Vec<MatrixRow>,
}

impl ReportMatrix {
    fn new(rows: Vec<MatrixRow>) -> Self {
        Self {
            columns: CSV_HEADER.to_vec(),
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SWDReport {
    pub parameters: Parameters,
    pub checks: Vec<CheckRecord>,
    pub matrix: ReportMatrix,
    /// All restriction maps surjective; `None` when the theta checks did not run.
    pub duality: Option<bool>,
}

impl SWDReport {
    /// Every asserted check passed.
    pub fn passed(&self) -> bool {
        self.asserted_failures().is_empty()
    }

    pub fn asserted_failures(&self) -> Vec<&CheckRecord> {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Asserted && c.status == CheckStatus::Fail)
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Rows in [`CSV_HEADER`] layout, header included.
pub fn matrix_csv(rows: &[MatrixRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn feasibility(ctx: &FieldCtx, n: usize) -> Result<(), HomError> {
    let r = ctx.spec().r;
    if n == 0 || r < 2 {
        return Err(HomError::InfeasibleField(format!("need n ≥ 1 and r ≥ 2, got n = {n}, r = {r}")));
    }
    let p = ctx.characteristic();
    if p != 0 && r as u64 % p == 0 {
        return Err(HomError::InfeasibleField(format!("characteristic divides r = {r}")));
    }
    if let Some(q) = ctx.cardinality() {
        if q <= r as u64 {
            return Err(HomError::InfeasibleField(format!("field has {q} elements, need more than r = {r}")));
        }
    }
    Ok(())
}

/// Cache key fields shared by every object of one instance.
struct KeyBase {
    n: usize,
    r: usize,
    field: String,
    zeta: String,
    gamma: Vec<u8>,
}

impl KeyBase {
    fn key(&self, idempotent: &str, kind: &str, alpha: &Composition, beta: &Composition) -> CacheKey {
        CacheKey {
            n: self.n,
            r: self.r,
            field: self.field.clone(),
            zeta: self.zeta.clone(),
            gamma: self.gamma.clone(),
            idempotent: idempotent.into(),
            kind: kind.into(),
            alpha: alpha.parts().to_vec(),
            beta: beta.parts().to_vec(),
        }
    }
}

fn satisfies_constraints<F: Field>(
    alg: &GroupAlgebra<F>,
    hom: &HomSpace<F::Elem>,
    src: &IdealBlock<F::Elem>,
    dst: &IdealBlock<F::Elem>,
    corner: &[AlgebraElt<F::Elem>],
) -> bool {
    let field = alg.field();
    let maps = hom.matrices(field);
    corner.iter().all(|h| {
        let a = src.action(alg, h);
        let b = dst.action(alg, h);
        maps.iter().all(|phi| phi.mul(field, &a) == b.mul(field, phi))
    })
}

/// The corner Hom space and its restriction cell, through the cache. A
/// loaded basis must be in RREF, satisfy every constraint and contain the
/// restriction image, else it is discarded and recomputed.
fn cached_hom<F: Field>(
    alg: &GroupAlgebra<F>,
    cache: &dyn HomCache,
    key: &CacheKey,
    src: &IdealBlock<F::Elem>,
    dst: &IdealBlock<F::Elem>,
    corner: &[AlgebraElt<F::Elem>],
) -> (HomSpace<F::Elem>, ThetaCell) {
    let field = alg.field();
    if let Some(v) = cache.load(key) {
        let loaded = hom_space_from_json(field, &v).filter(|h| {
            h.source_dim == src.dim() && h.target_dim == dst.dim() && satisfies_constraints(alg, h, src, dst, corner)
        });
        if let Some(hom) = loaded {
            let cell = theta_cell(field, src, dst, &hom);
            if cell.image_contained {
                return (hom, cell);
            }
        }
        cache.reject(key);
    }
    let hom = corner_hom(alg, src, dst, corner);
    cache.store(key, &hom_space_to_json(field, &hom));
    let cell = theta_cell(field, src, dst, &hom);
    (hom, cell)
}

fn ideal_blocks<F: Field>(alg: &GroupAlgebra<F>, spaces: &[WeightSpace], x: &AlgebraElt<F::Elem>) -> Vec<IdealBlock<F::Elem>> {
    spaces.par_iter().map(|ws| IdealBlock::new(alg, ws.clone(), x)).collect()
}

struct CornerSide<'a, E> {
    name: &'a str,
    blocks: &'a [IdealBlock<E>],
    corner: &'a [AlgebraElt<E>],
}

/// Hom spaces and restriction cells for every ordered pair of blocks.
fn pair_homs<F: Field>(
    alg: &GroupAlgebra<F>,
    base: &KeyBase,
    cache: &dyn HomCache,
    side: &CornerSide<'_, F::Elem>,
) -> Vec<(HomSpace<F::Elem>, ThetaCell)> {
    let k = side.blocks.len();
    (0..k * k)
        .into_par_iter()
        .map(|ij| {
            let (a, b) = (&side.blocks[ij / k], &side.blocks[ij % k]);
            let key = base.key(side.name, "hom_corner", a.ws.alpha(), b.ws.alpha());
            cached_hom(alg, cache, &key, a, b, side.corner)
        })
        .collect()
}

fn cell_json(alpha: &Composition, beta: &Composition, value: Value) -> Value {
    json!([alpha.csv_label(), beta.csv_label(), value])
}

/// Runs the selected checks for one `(n, r, field, idempotent)` instance.
pub fn verify_swd_instance(
    n: usize,
    ctx: &FieldCtx,
    kind: IdempotentKind,
    opts: &VerifyOptions<'_>,
) -> Result<SWDReport, HomError> {
    feasibility(ctx, n)?;
    let label = ctx.label();
    with_field!(ctx, |field| verify_in(n, field, &label, kind, opts))
}

fn verify_in<F: Field>(
    n: usize,
    field: &F,
    label: &str,
    kind: IdempotentKind,
    opts: &VerifyOptions<'_>,
) -> Result<SWDReport, HomError> {
    let r = field.root_order();
    let alg = GroupAlgebra::new(field.clone(), r);
    let choice = match opts.gamma {
        Some(g) => CycleChoice::new(g.clone())?,
        None => CycleChoice::canonical(r),
    };
    let e_dsw = alg.dsw()?;
    let kappa = alg.klyachko()?;
    let f = alg.cycle_idempotent(&choice)?;
    // κf = f and fκ = κ need γ matched to κ; for γ = σγ₀σ⁻¹ the matching
    // Klyachko idempotent is σκσ⁻¹
    let relabeling = choice.relabeling();
    let relabeled = !relabeling.is_identity();
    let sigma = alg.group().rank(&relabeling);
    let partner = if relabeled { alg.conjugate_index(sigma, &kappa) } else { kappa.clone() };
    let e = match kind {
        IdempotentKind::Dsw => e_dsw.clone(),
        IdempotentKind::Klyachko => kappa.clone(),
    };
    let p = field.characteristic();
    let semisimple = p == 0 || p > r as u64;
    let checks = opts.checks;
    let space = TensorSpace::new(n, r);
    let base = KeyBase {
        n,
        r,
        field: label.into(),
        zeta: field.render(field.zeta()),
        gamma: choice.gamma().one_line().to_vec(),
    };
    let parameters = Parameters {
        n,
        r,
        field: label.into(),
        idempotent: kind,
        gamma: base.gamma.clone(),
        zeta: base.zeta.clone(),
        regime: if semisimple { "semisimple" } else { "open" }.into(),
        checks: checks.names(),
    };
    let mut records = Vec::new();

    if checks.relations {
        let mut named = alg.relations(&e_dsw, &kappa, &f)?.named();
        if relabeled {
            let paired = alg.relations(&e_dsw, &partner, &f)?.named();
            for (slot, p) in named.iter_mut().zip(paired) {
                if matches!(slot.0, "k*f = f" | "f*k = k") {
                    *slot = p;
                }
            }
        }
        let expected: serde_json::Map<String, Value> = named.iter().map(|(k, _)| (k.to_string(), json!(true))).collect();
        let computed: serde_json::Map<String, Value> = named.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        records.push(CheckRecord::new(
            "idempotent relations",
            "Lie and cycle idempotent relations",
            CheckKind::Asserted,
            Value::Object(expected),
            Value::Object(computed),
            named.iter().all(|(_, ok)| *ok),
        ));

        // the trace of right multiplication versus the raw class sums,
        // which differ by the centralizer order
        let group = alg.group();
        let sums = alg.class_sums(&e);
        let mut trace = Vec::new();
        let mut corrected = Vec::new();
        let mut raw = Vec::new();
        let mut ok = true;
        for (t, (mu, sum)) in group.class_representatives().into_iter().zip(&sums) {
            let chi = alg.module_character(&e, Side::Right, group.elem(t))?;
            let z = field.from_int(group.centralizer_order(t) as i64);
            let want = field.mul(&z, sum);
            ok &= chi == want;
            trace.push(json!([mu.csv_label(), field.render(&chi)]));
            corrected.push(json!([mu.csv_label(), field.render(&want)]));
            raw.push(json!([mu.csv_label(), field.render(sum)]));
        }
        records.push(CheckRecord::new(
            "ideal character equals centralizer order times class sum",
            "character of a right ideal generated by an idempotent",
            CheckKind::Asserted,
            json!({ "centralizer_times_class_sum": corrected }),
            json!({ "trace": trace, "class_sum": raw }),
            ok,
        ));
    }

    let need_lie_blocks = checks.lie || checks.lemma1;
    let lie = if need_lie_blocks {
        Some(lie_blocks(&alg, n, &e))
    } else {
        None
    };

    if let (true, Some(blocks)) = (checks.lie, &lie) {
        let pairs: Vec<_> = blocks.iter().map(|b| (&b.ws, &b.sub)).collect();
        let merged = merge_blocks(field, space, &pairs);
        let oracle = bracket_oracle(field, n, r);
        let witt = witt_dimension(n, r);
        records.push(CheckRecord::new(
            "tensor space times Lie idempotent is the free Lie algebra",
            "Lie idempotent image equals the span of right-normed brackets",
            CheckKind::Asserted,
            json!({ "dim": witt, "equals_brackets": true }),
            json!({ "dim": merged.dim(), "bracket_dim": oracle.dim(), "equals_brackets": merged == oracle }),
            merged == oracle && merged.dim() == witt,
        ));
        if n < r {
            let other = match kind {
                IdempotentKind::Dsw => &kappa,
                IdempotentKind::Klyachko => &e_dsw,
            };
            let other_blocks = lie_blocks(&alg, n, other);
            let other_pairs: Vec<_> = other_blocks.iter().map(|b| (&b.ws, &b.sub)).collect();
            let other_merged = merge_blocks(field, space, &other_pairs);
            records.push(CheckRecord::new(
                "few letters: image independent of the Lie idempotent",
                "tensor space times e_r versus times the Klyachko idempotent below n = r",
                CheckKind::Experimental,
                json!({ "equal": true }),
                json!({ "equal": merged == other_merged, "dims": [merged.dim(), other_merged.dim()] }),
                merged == other_merged,
            ));
        }
    }

    let need_h = checks.lemma1 || checks.theta || checks.fieldindep;
    let h = if need_h { h_algebra(&alg, &f, &choice) } else { Vec::new() };
    let times = |x: &AlgebraElt<F::Elem>, y: &AlgebraElt<F::Elem>| alg.mul(x, y).expect("same algebra");
    let partner_corner: Vec<_> = h.par_iter().map(|x| times(x, &partner)).collect();
    // eBe and κBκ do not depend on γ; build them from H conjugated back to γ₀
    let kappa_corner: Vec<_> = if relabeled {
        let back = alg.group().inv(sigma);
        h.par_iter().map(|x| times(&alg.conjugate_index(back, x), &kappa)).collect()
    } else {
        partner_corner.clone()
    };
    let e_corner: Vec<_> = match kind {
        IdempotentKind::Dsw => kappa_corner.par_iter().map(|x| times(&e, x)).collect(),
        IdempotentKind::Klyachko => kappa_corner.clone(),
    };

    if let (true, Some(blocks)) = (checks.lemma1, &lie) {
        let rep = lemma1_on_blocks(&alg, n, blocks, &e_corner, opts.ops)?;
        records.push(CheckRecord::new(
            "corner algebra image equals Schur centralizer",
            "corner algebra acting on tensor space times idempotent is the full centralizer",
            CheckKind::Asserted,
            json!({ "equal": true, "dim": rep.dim_centralizer }),
            serde_json::to_value(&rep).expect("serializes"),
            rep.equal,
        ));
    }

    let sorted = space.sorted_weights();
    let spaces: Vec<WeightSpace> = sorted.iter().map(|a| space.weight_space(a)).collect::<Result<_, _>>()?;
    let k = sorted.len();
    let mut matrix = Vec::new();
    let mut duality = None;

    if checks.theta || checks.fieldindep {
        let f_blocks = ideal_blocks(&alg, &spaces, &f);
        let f_side = CornerSide {
            name: "cycle",
            blocks: &f_blocks,
            corner: &h,
        };
        let f_homs = pair_homs(&alg, &base, opts.cache, &f_side);
        for (ij, (_, cell)) in f_homs.iter().enumerate() {
            matrix.push(MatrixRow::new(&sorted[ij / k], &sorted[ij % k], label, cell));
        }

        if checks.theta {
            let k_blocks = ideal_blocks(&alg, &spaces, &partner);
            let k_side = CornerSide {
                name: "klyachko",
                blocks: &k_blocks,
                corner: &partner_corner,
            };
            let k_homs = pair_homs(&alg, &base, opts.cache, &k_side);
            let e_data = match kind {
                IdempotentKind::Dsw => {
                    let blocks = ideal_blocks(&alg, &spaces, &e);
                    let side = CornerSide {
                        name: "dsw",
                        blocks: &blocks,
                        corner: &e_corner,
                    };
                    let cells: Vec<ThetaCell> = pair_homs(&alg, &base, opts.cache, &side).into_iter().map(|x| x.1).collect();
                    Some(cells)
                }
                IdempotentKind::Klyachko => None,
            };
            let xis: Vec<XiReport> = (0..k * k)
                .into_par_iter()
                .map(|ij| {
                    let (a, b) = (ij / k, ij % k);
                    xi_on_blocks(
                        &alg,
                        &partner,
                        &f,
                        [&k_blocks[a], &k_blocks[b], &f_blocks[a], &f_blocks[b]],
                        &k_homs[ij].0,
                        &f_homs[ij].0,
                        k_homs[ij].1,
                        f_homs[ij].1,
                    )
                })
                .collect::<Result<_, _>>()?;

            let pair = |ij: usize| (&sorted[ij / k], &sorted[ij % k]);
            let mut expected = Vec::new();
            let mut computed = Vec::new();
            for (ij, (_, cell)) in f_homs.iter().enumerate() {
                let (a, b) = pair(ij);
                expected.push(cell_json(a, b, json!(contingency_count(a.parts(), b.parts()))));
                computed.push(cell_json(a, b, json!(cell.dim_hom_sigma)));
            }
            records.push(CheckRecord::new(
                "symmetric group Hom dimensions",
                "double cosets of Young subgroups count equivariant maps",
                CheckKind::Asserted,
                Value::Array(expected.clone()),
                Value::Array(computed.clone()),
                expected == computed,
            ));

            let mut bad = Vec::new();
            let cells = f_homs.iter().chain(&k_homs).map(|x| &x.1).chain(e_data.iter().flatten());
            for (i, cell) in cells.enumerate() {
                if !cell.image_contained || cell.dim_image > cell.dim_hom_x {
                    let (a, b) = pair(i % (k * k));
                    bad.push(cell_json(a, b, json!(cell)));
                }
            }
            records.push(CheckRecord::new(
                "restriction images lie in corner Hom spaces",
                "restricting a symmetric group map gives a corner-algebra map",
                CheckKind::Asserted,
                json!({ "violations": [] }),
                json!({ "violations": bad }),
                bad.is_empty(),
            ));

            let all_surjective = f_homs.iter().all(|x| x.1.surjective);
            duality = Some(all_surjective);
            let failing: Vec<Value> = f_homs
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.1.surjective)
                .map(|(ij, x)| {
                    let (a, b) = pair(ij);
                    cell_json(a, b, json!({ "dim_hom_H": x.1.dim_hom_x, "dim_theta_image": x.1.dim_image }))
                })
                .collect();
            records.push(CheckRecord::new(
                "duality: every restriction map is surjective",
                "double centralizer property holds iff all weight-space restrictions are onto",
                if semisimple {
                    CheckKind::Asserted
                } else {
                    CheckKind::Experimental
                },
                json!({ "surjective": true }),
                json!({ "surjective": all_surjective, "non_surjective_cells": failing }),
                all_surjective,
            ));

            let inconsistent: Vec<Value> = xis
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.consistent())
                .map(|(ij, x)| {
                    let (a, b) = pair(ij);
                    cell_json(a, b, json!(x))
                })
                .collect();
            let pairs_checked: usize = xis.iter().map(|x| x.pairs_checked).sum();
            records.push(CheckRecord::new(
                "transport between Klyachko and cycle idempotents",
                "corner algebras of related idempotents have isomorphic Hom spaces and equal restriction verdicts",
                CheckKind::Asserted,
                json!({ "inconsistent_cells": [] }),
                json!({ "inconsistent_cells": inconsistent, "product_pairs_checked": pairs_checked }),
                inconsistent.is_empty(),
            ));

            if let Some(e_cells) = &e_data {
                let differing: Vec<Value> = e_cells
                    .iter()
                    .zip(&k_homs)
                    .enumerate()
                    .filter(|(_, (x, y))| {
                        (x.dim_hom_x, x.dim_image, x.surjective) != (y.1.dim_hom_x, y.1.dim_image, y.1.surjective)
                    })
                    .map(|(ij, (x, y))| {
                        let (a, b) = pair(ij);
                        cell_json(a, b, json!({ "dsw": x, "klyachko": y.1 }))
                    })
                    .collect();
                records.push(CheckRecord::new(
                    "restriction verdicts independent of the Lie idempotent",
                    "e_r and the Klyachko idempotent give the same duality answer",
                    CheckKind::Asserted,
                    json!({ "differing_cells": [] }),
                    json!({ "differing_cells": differing }),
                    differing.is_empty(),
                ));
            }

            records.push(weight_permutation_check(&alg, &space, &sorted, &f, &f_blocks, &f_homs, &h));
        }

        if checks.fieldindep {
            let reference = reference_dims(n, r, opts.cache)?;
            let ours: Vec<usize> = f_homs.iter().map(|x| x.1.dim_hom_x).collect();
            let rows: Vec<Value> = (0..k * k)
                .map(|ij| cell_json(&sorted[ij / k], &sorted[ij % k], json!([reference[ij], ours[ij]])))
                .collect();
            records.push(CheckRecord::new(
                "corner Hom dimensions match characteristic zero",
                "dimension of corner-algebra Hom spaces should not depend on the field",
                CheckKind::Experimental,
                json!({ "reference_field": format!("cyclo:{r}") }),
                json!({ "cells": rows }),
                reference == ours,
            ));
        }
    }

    if checks.semisimple && semisimple {
        let rep = semisimple_report(&alg, &f, &choice, n)?;
        let expected = json!({
            "dim_h": rep.dim_h_tableaux,
            "multiplicities": rep.multiplicities.iter().map(|m| json!([m.lambda, m.tableau_count])).collect::<Vec<_>>(),
            "tensor_character": rep.tensor_character.iter().map(|c| json!([c.class, c.n_pow_cycles])).collect::<Vec<_>>(),
        });
        records.push(CheckRecord::new(
            "semisimple structure of the cycle corner algebra",
            "tableau counts with major index 1 mod r give the corner algebra and multiplicities",
            CheckKind::Asserted,
            expected,
            serde_json::to_value(&rep).expect("serializes"),
            rep.passes(),
        ));
    }

    Ok(SWDReport {
        parameters,
        checks: records,
        matrix: ReportMatrix::new(matrix),
        duality,
    })
}

/// Reverses the first sorted weight that is not a palindrome and compares
/// its diagonal cell with the sorted one.
fn weight_permutation_check<F: Field>(
    alg: &GroupAlgebra<F>,
    space: &TensorSpace,
    sorted: &[Composition],
    f: &AlgebraElt<F::Elem>,
    f_blocks: &[IdealBlock<F::Elem>],
    f_homs: &[(HomSpace<F::Elem>, ThetaCell)],
    h: &[AlgebraElt<F::Elem>],
) -> CheckRecord {
    let k = sorted.len();
    let name = "weights permuted give equal dimensions";
    let anchor = "reduction to sorted weights under letter permutations";
    let pick = sorted.iter().position(|a| {
        let mut rev = a.parts().to_vec();
        rev.reverse();
        rev != a.parts()
    });
    let Some(i) = pick else {
        return CheckRecord::new(name, anchor, CheckKind::Asserted, json!(null), json!(null), true);
    };
    let mut rev = sorted[i].parts().to_vec();
    rev.reverse();
    let permuted = Composition::new(rev);
    let ws = space.weight_space(&permuted).expect("same r");
    let block = IdealBlock::new(alg, ws, f);
    let hom = corner_hom(alg, &block, &block, h);
    let cell = theta_cell(alg.field(), &block, &block, &hom);
    let orig = &f_homs[i * k + i].1;
    let dims = |d: usize, c: &ThetaCell| json!({ "dim_block": d, "dim_hom_sigma": c.dim_hom_sigma, "dim_hom_H": c.dim_hom_x, "dim_theta_image": c.dim_image });
    let expected = dims(f_blocks[i].dim(), orig);
    let computed = dims(block.dim(), &cell);
    CheckRecord::new(
        name,
        anchor,
        CheckKind::Asserted,
        json!({ "weight": sorted[i].csv_label(), "dims": expected }),
        json!({ "weight": permuted.csv_label(), "dims": computed }),
        expected == computed,
    )
}

/// Corner Hom dimensions over the cyclotomic field, canonical choices.
fn reference_dims(n: usize, r: usize, cache: &dyn HomCache) -> Result<Vec<usize>, HomError> {
    let field = CyclotomicField::new(FieldSpec::cyclotomic(r)).map_err(|e| HomError::Internal(e.to_string()))?;
    let cells = f_cells(n, &field, &format!("cyclo:{r}"), cache)?;
    Ok(cells.iter().map(|c| c.dim_hom_h).collect())
}

/// Restriction cells for the cycle idempotent over sorted weights, canonical `γ`.
fn f_cells<F: Field>(n: usize, field: &F, label: &str, cache: &dyn HomCache) -> Result<Vec<MatrixRow>, HomError> {
    let r = field.root_order();
    let alg = GroupAlgebra::new(field.clone(), r);
    let choice = CycleChoice::canonical(r);
    let f = alg.cycle_idempotent(&choice)?;
    let h = h_algebra(&alg, &f, &choice);
    let space = TensorSpace::new(n, r);
    let sorted = space.sorted_weights();
    let spaces: Vec<WeightSpace> = sorted.iter().map(|a| space.weight_space(a)).collect::<Result<_, _>>()?;
    let blocks = ideal_blocks(&alg, &spaces, &f);
    let base = KeyBase {
        n,
        r,
        field: label.into(),
        zeta: field.render(field.zeta()),
        gamma: choice.gamma().one_line().to_vec(),
    };
    let side = CornerSide {
        name: "cycle",
        blocks: &blocks,
        corner: &h,
    };
    let k = sorted.len();
    Ok(pair_homs(&alg, &base, cache, &side)
        .iter()
        .enumerate()
        .map(|(ij, (_, cell))| MatrixRow::new(&sorted[ij / k], &sorted[ij % k], label, cell))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceRow {
    pub alpha: String,
    pub beta: String,
    /// `dim Hom_H` per field, in input order.
    pub dims: Vec<usize>,
    pub varies: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldIndependence {
    pub n: usize,
    pub r: usize,
    pub fields: Vec<String>,
    pub rows: Vec<IndependenceRow>,
    /// Every restriction cell, grouped by field.
    pub cells: Vec<MatrixRow>,
}

impl FieldIndependence {
    pub fn varies(&self) -> bool {
        self.rows.iter().any(|r| r.varies)
    }

    /// `alpha,beta,<field>…,varies`.
    pub fn table_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["alpha".to_string(), "beta".to_string()];
        header.extend(self.fields.iter().cloned());
        header.push("varies".into());
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = vec![row.alpha.clone(), row.beta.clone()];
            rec.extend(row.dims.iter().map(usize::to_string));
            rec.push(row.varies.to_string());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn cells_csv(&self) -> String {
        matrix_csv(&self.cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }
}

/// `dim Hom_H` for each sorted pair and each field, flagging variation.
pub fn field_independence_matrix(n: usize, ctxs: &[FieldCtx], cache: &dyn HomCache) -> Result<FieldIndependence, HomError> {
    let Some(first) = ctxs.first() else {
        return Err(HomError::InfeasibleField("no fields given".into()));
    };
    let r = first.spec().r;
    let mut per_field = Vec::new();
    for ctx in ctxs {
        if ctx.spec().r != r {
            return Err(HomError::InfeasibleField(format!("{} is built for r = {}, expected {r}", ctx.label(), ctx.spec().r)));
        }
        feasibility(ctx, n)?;
        let label = ctx.label();
        per_field.push(with_field!(ctx, |field| f_cells(n, field, &label, cache))?);
    }
    let rows = (0..per_field[0].len())
        .map(|i| {
            let dims: Vec<usize> = per_field.iter().map(|cells| cells[i].dim_hom_h).collect();
            IndependenceRow {
                alpha: per_field[0][i].alpha.clone(),
                beta: per_field[0][i].beta.clone(),
                varies: dims.windows(2).any(|w| w[0] != w[1]),
                dims,
            }
        })
        .collect();
    Ok(FieldIndependence {
        n,
        r,
        fields: ctxs.iter().map(FieldCtx::label).collect(),
        rows,
        cells: per_field.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Mutex;

    use super::*;

    #[derive(Default)]
    struct MemCache(Mutex<HashMap<String, Value>>, Mutex<usize>);

    impl HomCache for MemCache {
        fn load(&self, key: &CacheKey) -> Option<Value> {
            self.0.lock().unwrap().get(&format!("{key:?}")).cloned()
        }
        fn store(&self, key: &CacheKey, value: &Value) {
            self.0.lock().unwrap().insert(format!("{key:?}"), value.clone());
        }
        fn reject(&self, _: &CacheKey) {
            *self.1.lock().unwrap() += 1;
        }
    }

    #[test]
    fn gf7_small_instance_passes() {
        let ctx = FieldCtx::parse("gf:7", 3).unwrap();
        let rep = verify_swd_instance(2, &ctx, IdempotentKind::Dsw, &VerifyOptions::default()).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.duality, Some(true));
        assert_eq!(rep.matrix.rows.len(), 4);
        assert!(rep.checks.iter().all(|c| c.status == CheckStatus::Pass));
        let csv = matrix_csv(&rep.matrix.rows);
        assert!(csv.starts_with("alpha,beta,field,dim_hom_sigma,dim_hom_H,dim_theta_image,surjective\n"));
        assert!(csv.contains("\"2,1\",\"2,1\",gf:7,2,1,1,true"));
    }

    #[test]
    fn open_regime_marks_duality_experimental() {
        let ctx = FieldCtx::parse("gf:2^2", 3).unwrap();
        let opts = VerifyOptions {
            checks: CheckSet::parse("theta,semisimple").unwrap(),
            ..Default::default()
        };
        let rep = verify_swd_instance(2, &ctx, IdempotentKind::Klyachko, &opts).unwrap();
        let duality = rep.check("duality: every restriction map is surjective").unwrap();
        assert_eq!(duality.kind, CheckKind::Experimental);
        assert!(rep.check("semisimple structure of the cycle corner algebra").is_none());
        assert!(rep.passed());
    }

    #[test]
    fn poisoned_cache_is_recomputed() {
        let ctx = FieldCtx::parse("cyclo:3", 3).unwrap();
        let cache = MemCache::default();
        let opts = VerifyOptions {
            checks: CheckSet::parse("theta").unwrap(),
            cache: &cache,
            ..Default::default()
        };
        let clean = verify_swd_instance(3, &ctx, IdempotentKind::Klyachko, &opts).unwrap();
        // drop a basis vector from every stored space
        for v in cache.0.lock().unwrap().values_mut() {
            v["rows"].as_array_mut().unwrap().pop();
        }
        let again = verify_swd_instance(3, &ctx, IdempotentKind::Klyachko, &opts).unwrap();
        assert_eq!(clean.to_json(), again.to_json());
        assert!(*cache.1.lock().unwrap() > 0);
    }

    #[test]
    fn independence_table() {
        let ctxs: Vec<FieldCtx> = ["cyclo:3", "gf:7", "gf:13"].iter().map(|s| FieldCtx::parse(s, 3).unwrap()).collect();
        let t = field_independence_matrix(3, &ctxs, &NoCache).unwrap();
        assert_eq!(t.rows.len(), 9);
        assert!(!t.varies());
        assert!(t.table_csv().starts_with("alpha,beta,cyclo:3,gf:7,gf:13,varies\n"));
    }
}
