//! The two identities for a pair `(W, L)` and their assembly over all shapes
//! of `W`.
//!
//! For a pair: `ρ̃_L = Σ_w Ind_{C_W(w)}^{N_W(W_L)} φ_w` (`ThmC-sum`) and
//! `ρ̃_L = α_L ε ω̃_L` (`ThmC-omega`). For the whole group, with `R` the union
//! of the cuspidal representatives over one subset per shape:
//! `ρ = Σ_{w ∈ R} Ind_{C_W(w)}^W φ_w` (`ThmA-rho`) and
//! `ω = ε Σ_{w ∈ R} Ind_{C_W(w)}^W (α_w φ_w)` (`ThmA-omega`).

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use coxeter_core::classfn::induce_with_fusion;
use coxeter_core::coxgroup::{class_fusion, Classes, ElemId, GroupBox, Parabolic, Subgroup};
use coxeter_core::descent::{rho_tilde, rho_tilde_oracle, shapes, DescentMatrix};
use coxeter_core::osalg::{alpha_character, alpha_w_character, omega_value, CoeffMemo, OsAlgebra, TopComponent};
use coxeter_core::solver::{solve_assignment, CuspidalPiece};
use coxeter_core::{ClassFunction, Cyclotomic};

use crate::group::format_subset;
use crate::report::{Record, Report};
use crate::table::{Assignment, ResolvedTable, TableFile};
use crate::AppError;

/// Which classes the Orlik–Solomon side is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaScope {
    #[default]
    Full,
    /// The identity class and this many further classes, evenly spaced in
    /// class order.
    Sample(usize),
}

impl OmegaScope {
    pub fn classes(self, n: usize) -> Option<Vec<usize>> {
        match self {
            OmegaScope::Full => None,
            OmegaScope::Sample(k) => {
                let mut v = vec![0];
                for i in 1..=k {
                    v.push((i * (n - 1)).div_ceil(k).min(n - 1));
                }
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub omega: OmegaScope,
    /// Adds cross-checks against independent computations.
    pub oracle: bool,
}

/// Where the characters `φ_w` come from.
pub enum Source<'a> {
    Table(&'a ResolvedTable),
    Solve,
}

/// `N_W(W_L)` with its classes and the characters living on it.
pub struct PairData {
    pub group: String,
    pub subset_text: String,
    pub parabolic: Parabolic,
    pub normalizer: Subgroup,
    pub complement: Vec<ElemId>,
    pub classes: Classes,
    pub labels: Vec<String>,
}

impl PairData {
    pub fn new(gb: &GroupBox, subset: &[usize]) -> Result<Self, AppError> {
        let parabolic = Parabolic::new(gb, subset)?;
        let (normalizer, complement) = parabolic.normalizer(gb);
        let classes = normalizer.classes(gb);
        let labels = classes.labels();
        Ok(PairData {
            group: gb.datum().name().to_string(),
            subset_text: format_subset(gb.datum(), &parabolic.subset),
            parabolic,
            normalizer,
            complement,
            classes,
            labels,
        })
    }

    pub fn subset(&self) -> &[usize] {
        &self.parabolic.subset
    }

    pub fn rho_tilde(&self, gb: &GroupBox) -> Result<ClassFunction, AppError> {
        let dm = DescentMatrix::new(gb, &self.parabolic);
        Ok(rho_tilde(gb, &self.parabolic, &dm, &self.complement, &self.classes)?)
    }

    pub fn rho_tilde_oracle(&self, gb: &GroupBox) -> Result<ClassFunction, AppError> {
        let dm = DescentMatrix::new(gb, &self.parabolic);
        Ok(rho_tilde_oracle(gb, &self.parabolic, &dm, &self.complement, &self.classes)?)
    }

    /// `ω̃_L` on the selected classes (all if `None`); other entries are 0.
    pub fn omega_tilde(&self, gb: &GroupBox, classes: Option<&[usize]>) -> Result<ClassFunction, AppError> {
        let top = TopComponent::new(&self.parabolic);
        let all: Vec<usize> = (0..self.classes.len()).collect();
        let selected = classes.unwrap_or(&all);
        let values: Vec<(usize, i64)> = selected
            .par_iter()
            .map(|&k| {
                let mut memo = CoeffMemo::new();
                top.value(gb, self.classes.rep(k), &mut memo).map(|v| (k, v))
            })
            .collect::<Result<_, _>>()?;
        let mut out = vec![0; self.classes.len()];
        for (k, v) in values {
            out[k] = v;
        }
        Ok(ClassFunction::from_integers(&out))
    }

    pub fn alpha(&self, gb: &GroupBox) -> Result<ClassFunction, AppError> {
        Ok(alpha_character(gb, &self.parabolic, &self.classes)?)
    }

    pub fn epsilon(&self, gb: &GroupBox) -> ClassFunction {
        ClassFunction::sign(gb, &self.classes)
    }

    /// Lexicographically least solver assignment, if any.
    pub fn solve(&self, gb: &GroupBox, target: &ClassFunction) -> Result<Option<Vec<Assignment>>, AppError> {
        let reps = self.parabolic.cuspidal_classes(gb);
        let pieces: Vec<CuspidalPiece> = reps
            .par_iter()
            .map(|&w| CuspidalPiece::new(gb, w, &self.normalizer, &self.classes))
            .collect::<Result<_, _>>()?;
        let Some(choice) = solve_assignment(&pieces, target) else { return Ok(None) };
        Ok(Some(
            pieces
                .into_iter()
                .zip(choice)
                .map(|(p, c)| Assignment {
                    label: gb.format(p.rep),
                    rep: p.rep,
                    character: p.characters[c].clone(),
                    centralizer: p.centralizer,
                    classes: p.classes,
                    derived: true,
                })
                .collect(),
        ))
    }

    pub fn induced_sum(&self, assignments: &[Assignment]) -> Result<ClassFunction, AppError> {
        induced_sum(assignments, &self.classes, |a| Ok(a.character.to_class_function()))
    }
}

fn induced_sum(
    assignments: &[Assignment],
    ambient: &Classes,
    character: impl Fn(&Assignment) -> Result<ClassFunction, AppError>,
) -> Result<ClassFunction, AppError> {
    let mut total = ClassFunction::constant(ambient.len(), Cyclotomic::zero());
    for a in assignments {
        let fusion = class_fusion(&a.classes, ambient)?;
        let ind = induce_with_fusion(&character(a)?, &a.classes, ambient, &fusion);
        total = &total + &ind;
    }
    Ok(total)
}

/// Checks both identities for one pair.
pub fn verify_theorem_c(gb: &GroupBox, subset: &[usize], source: Source<'_>, opts: &Options) -> Result<Report, AppError> {
    let pd = PairData::new(gb, subset)?;
    if let Source::Table(t) = &source {
        if t.subset != pd.subset() {
            return Err(AppError::Usage(format!(
                "table is for L={} but L={} was requested",
                format_subset(gb.datum(), &t.subset),
                pd.subset_text
            )));
        }
    }
    let (g, l) = (pd.group.clone(), pd.subset_text.clone());
    let mut report = Report::default();

    let start = Instant::now();
    let target = pd.rho_tilde(gb)?;
    let assignments = match source {
        Source::Table(t) => Some(t.assignments.clone()),
        Source::Solve => pd.solve(gb, &target)?,
    };
    let mut rec = match &assignments {
        Some(a) => Record::compare(&g, &l, "ThmC-sum", &pd.labels, &target, &pd.induced_sum(a)?, None),
        None => Record::failure(&g, &l, "ThmC-sum", "no assignment of linear characters exists".into()),
    };
    rec.seconds = Some(start.elapsed().as_secs_f64());
    report.records.push(rec);

    let start = Instant::now();
    let scope = opts.omega.classes(pd.classes.len());
    let omega = pd.omega_tilde(gb, scope.as_deref())?;
    let got = &(&pd.alpha(gb)? * &pd.epsilon(gb)) * &omega;
    let mut rec = Record::compare(&g, &l, "ThmC-omega", &pd.labels, &target, &got, scope.as_deref());
    rec.seconds = Some(start.elapsed().as_secs_f64());
    report.records.push(rec);

    if opts.oracle {
        let start = Instant::now();
        let mut rec = Record::compare(&g, &l, "Oracle-rho", &pd.labels, &target, &pd.rho_tilde_oracle(gb)?, None);
        rec.seconds = Some(start.elapsed().as_secs_f64());
        report.records.push(rec);
    }
    Ok(report)
}

/// Resolves the tables that belong to `gb`.
pub fn resolve_tables(gb: &GroupBox, tables: &[TableFile]) -> Result<Vec<ResolvedTable>, AppError> {
    let name = gb.datum().name();
    tables
        .iter()
        .filter(|t| t.group_name() == name)
        .map(|t| t.resolve(gb).map_err(|e| AppError::Table(format!("{name} table L={}", subset_tokens(t)), e)))
        .collect()
}

fn subset_tokens(t: &TableFile) -> String {
    let v: Vec<&str> = t.subset.iter().map(|x| x.text.as_str()).collect();
    format!("{{{}}}", v.join(","))
}

/// Per-shape data used by [`verify_theorem_a`].
pub struct ShapePart {
    pub subset: Vec<usize>,
    pub from_table: bool,
    pub assignments: Vec<Assignment>,
}

/// Chooses a subset per shape (the one a table is given for, else the
/// smallest) and its characters `φ_w`.
pub fn assemble_shapes(gb: &GroupBox, tables: &[ResolvedTable], solve: bool) -> Result<Vec<ShapePart>, AppError> {
    let sh = shapes(gb);
    sh.par_iter()
        .map(|s| {
            if let Some(t) = tables.iter().find(|t| s.members.contains(&t.subset)) {
                return Ok(ShapePart { subset: t.subset.clone(), from_table: true, assignments: t.assignments.clone() });
            }
            let text = format_subset(gb.datum(), s.rep());
            if !solve {
                return Err(AppError::MissingShape(text));
            }
            let pd = PairData::new(gb, s.rep())?;
            let target = pd.rho_tilde(gb)?;
            let assignments = pd.solve(gb, &target)?.ok_or_else(|| AppError::NoAssignment(text))?;
            Ok(ShapePart { subset: s.rep().to_vec(), from_table: false, assignments })
        })
        .collect()
}

/// `ω` (all degrees) on the selected classes of `W`; other entries are 0.
pub fn omega_full(gb: &GroupBox, classes: &Classes, selected: Option<&[usize]>) -> ClassFunction {
    let os = OsAlgebra::new(gb.datum());
    let all: Vec<usize> = (0..classes.len()).collect();
    let selected = selected.unwrap_or(&all);
    let values: Vec<(usize, i64)> = selected
        .par_iter()
        .map(|&k| {
            let mut memo = CoeffMemo::new();
            let v = (0..=os.rank()).map(|d| omega_value(gb, &os, classes.rep(k), d, &mut memo)).sum();
            (k, v)
        })
        .collect();
    let mut out = vec![0; classes.len()];
    for (k, v) in values {
        out[k] = v;
    }
    ClassFunction::from_integers(&out)
}

/// Checks the two identities on `W` with the characters of every shape.
pub fn verify_theorem_a(gb: &GroupBox, tables: &[ResolvedTable], solve: bool, opts: &Options) -> Result<Report, AppError> {
    let g = gb.datum().name().to_string();
    let l = "S".to_string();
    let full = Subgroup::full(gb);
    let classes = full.classes(gb);
    let labels = classes.labels();
    let mut report = Report::default();

    let start = Instant::now();
    let parts = assemble_shapes(gb, tables, solve)?;
    let assignments: Vec<Assignment> = parts.iter().flat_map(|p| p.assignments.iter().cloned()).collect();
    let mut hit = HashSet::new();
    for a in &assignments {
        hit.insert(classes.class_of(a.rep).expect("element of W"));
    }
    let transversal = hit.len() == assignments.len() && hit.len() == classes.len();

    let mut regular = vec![0i64; classes.len()];
    regular[0] = gb.order() as i64;
    let rho = ClassFunction::from_integers(&regular);
    let sum = induced_sum(&assignments, &classes, |a| Ok(a.character.to_class_function()))?;
    let mut rec = Record::compare(&g, &l, "ThmA-rho", &labels, &rho, &sum, None);
    let from_tables = parts.iter().filter(|p| p.from_table).count();
    let note = format!("{} shapes, {from_tables} from tables", parts.len());
    if !transversal {
        rec = Record::failure(&g, &l, "ThmA-rho", format!("{note}; representatives are not a class transversal of W"));
    } else {
        rec.detail = Some(note);
    }
    rec.seconds = Some(start.elapsed().as_secs_f64());
    report.records.push(rec);

    let start = Instant::now();
    let scope = opts.omega.classes(classes.len());
    let omega = omega_full(gb, &classes, scope.as_deref());
    let twisted = induced_sum(&assignments, &classes, |a| {
        let alpha = alpha_w_character(gb, a.rep, &a.classes)?;
        Ok(&alpha * &a.character.to_class_function())
    })?;
    let got = &ClassFunction::sign(gb, &classes) * &twisted;
    let mut rec = Record::compare(&g, &l, "ThmA-omega", &labels, &omega, &got, scope.as_deref());
    rec.seconds = Some(start.elapsed().as_secs_f64());
    report.records.push(rec);
    Ok(report)
}
