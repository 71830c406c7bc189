//! The identity catalogue: every equality, inequality and zero-product
//! relation between the structure and utilization matrices, stored as data
//! and evaluated empirically against datasets.

mod expr;
mod search;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::ExtendedCount;
use crate::error::{Error, Result};
use crate::matrix::{first_difference, first_leq_violation};
use crate::structure::{build_structure, StructureBundle};
use crate::utilization::{build_utilization, is_fully_utilized, Dataset, UtilizationBundle};

pub use expr::{Expr, Symbol};
pub use search::{minimize, search_counterexample, Counterexample, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityClass {
    /// Holds on every dataset.
    Universal,
    /// Holds whenever every edge carries a trajectory.
    FullyUtilizedOnly,
    /// A zero Hadamard product.
    MutualExclusivity,
    /// Published in a form whose count-level reading is doubtful; audited,
    /// not asserted.
    ClaimedAudit,
    /// Expected to be falsifiable.
    Negative,
}

impl IdentityClass {
    /// Whether a failure of this class means the implementation (or the
    /// theory) is broken.
    pub fn is_soundness_gate(self) -> bool {
        matches!(self, IdentityClass::Universal | IdentityClass::MutualExclusivity)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityClass::Universal => "UNIVERSAL",
            IdentityClass::FullyUtilizedOnly => "FULLY_UTILIZED_ONLY",
            IdentityClass::MutualExclusivity => "MUTUAL_EXCLUSIVITY",
            IdentityClass::ClaimedAudit => "CLAIMED_AUDIT",
            IdentityClass::Negative => "NEGATIVE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Leq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Leq => "≤",
        }
    }
}

/// One catalogued relation `lhs (= | ≤) rhs`.
///
/// `paper_section` holds the topical group the relation belongs to and
/// `quote` its rendered formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: String,
    pub class: IdentityClass,
    pub relation: Relation,
    pub lhs: Expr,
    pub rhs: Expr,
    pub paper_section: String,
    pub quote: String,
}

impl IdentitySpec {
    pub fn new(id: &str, class: IdentityClass, group: &str, lhs: Expr, relation: Relation, rhs: Expr) -> Self {
        let quote = format!("{lhs} {} {rhs}", relation.symbol());
        IdentitySpec {
            id: id.to_string(),
            class,
            relation,
            lhs,
            rhs,
            paper_section: group.to_string(),
            quote,
        }
    }

    pub fn formula(&self) -> String {
        format!("{} {} {}", self.lhs, self.relation.symbol(), self.rhs)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut s = self.lhs.symbols();
        s.extend(self.rhs.symbols());
        s
    }

    /// For a zero-product spec `X ∘ Y = 0`, the pair `(X, Y)`.
    pub fn exclusive_pair(&self) -> Option<(Symbol, Symbol)> {
        match (&self.lhs, self.relation, &self.rhs) {
            (Expr::Hadamard(x, y), Relation::Eq, Expr::Zero) => match (x.as_ref(), y.as_ref()) {
                (Expr::Sym(x), Expr::Sym(y)) => Some((*x, *y)),
                _ => None,
            },
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub row_label: String,
    pub col_label: String,
    pub lhs: ExtendedCount,
    pub rhs: ExtendedCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub id: String,
    pub class: IdentityClass,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetDescriptor {
    pub n: usize,
    pub edges: usize,
    pub trajectories: usize,
    pub labels: Vec<String>,
}

impl DatasetDescriptor {
    pub fn of(d: &Dataset) -> Self {
        DatasetDescriptor {
            n: d.n(),
            edges: d.graph().edge_count(),
            trajectories: d.trajectories().len(),
            labels: d.graph().labels().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub formula: String,
    /// False for fully-utilized-only claims on a dataset that is not fully
    /// utilized: the verdict is reported but says nothing about the claim.
    pub applicable: bool,
    #[serde(flatten)]
    pub verdict: IdentityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub dataset: DatasetDescriptor,
    pub fully_utilized: bool,
    pub verdicts: Vec<AuditEntry>,
}

impl AuditReport {
    /// All UNIVERSAL and MUTUAL_EXCLUSIVITY relations hold.
    pub fn is_sound(&self) -> bool {
        self.soundness_failures().next().is_none()
    }

    pub fn soundness_failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.verdicts
            .iter()
            .filter(|e| e.verdict.class.is_soundness_gate() && !e.verdict.holds)
    }

    pub fn verdict(&self, id: &str) -> Option<&IdentityVerdict> {
        self.verdicts.iter().map(|e| &e.verdict).find(|v| v.id == id)
    }

    pub fn to_table(&self) -> String {
        let d = &self.dataset;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "dataset: n={} edges={} trajectories={} fully_utilized={}",
            d.n, d.edges, d.trajectories, self.fully_utilized
        );
        let id_w = self.verdicts.iter().map(|e| e.verdict.id.len()).max().unwrap_or(2).max(2);
        let _ = writeln!(out, "{:<id_w$}  {:<19}  {:<8}  witness", "id", "class", "verdict");
        for e in &self.verdicts {
            let v = &e.verdict;
            let status = match (v.holds, e.applicable) {
                (true, _) => "holds",
                (false, true) => "FAILS",
                (false, false) => "n/a",
            };
            let witness = v.witness.as_ref().map_or(String::new(), |w| {
                format!("({}, {}): {} vs {}", w.row_label, w.col_label, w.lhs, w.rhs)
            });
            let _ = writeln!(
                out,
                "{:<id_w$}  {:<19}  {:<8}  {}",
                v.id,
                v.class.as_str(),
                status,
                witness
            );
        }
        let failures = self.soundness_failures().count();
        let _ = writeln!(
            out,
            "soundness: {}",
            if failures == 0 { "ok".to_string() } else { format!("{failures} failure(s)") }
        );
        out
    }
}

fn group(id: &str) -> &'static str {
    match id.split('.').next().unwrap_or_default() {
        "T1" => "previous-model",
        "FU" => "previous-model/fully-utilized",
        "ME" => "mutual-exclusivity",
        "B" | "CLAIMED" => "substitute-route",
        "C" => "alternative-route",
        "D" => "indirect-flow",
        "E" => "other",
        _ => "exceptions",
    }
}

/// The fixed catalogue, in a stable order.
pub fn list_identities() -> Vec<IdentitySpec> {
    use IdentityClass::*;
    use Symbol::*;

    let s = Expr::Sym;
    let h = |x: Symbol, y: Symbol| s(x).hadamard(s(y));
    let zero = || Expr::Zero;
    let eq = |id: &str, class, lhs, rhs| IdentitySpec::new(id, class, group(id), lhs, Relation::Eq, rhs);
    let leq = |id: &str, lhs: Symbol, rhs: Symbol| {
        IdentitySpec::new(id, Universal, group(id), s(lhs), Relation::Leq, s(rhs))
    };
    // `X ∘ Y = Y` absorption.
    let absorb = |id: &str, x: Symbol, y: Symbol| eq(id, Universal, h(x, y), s(y));
    let exclusive = |id: &str, x: Symbol, y: Symbol| eq(id, MutualExclusivity, h(x, y), zero());

    vec![
        eq("T1.EHAT_FIXED", Universal, s(EHat), h(PHat, EHat)),
        eq("T1.A_FIXED", Universal, s(A), h(PHat, A)),
        leq("T1.FHAT_LEQ_A", FHat, A),
        eq("T1.F_EQ_A_F", Universal, s(F), h(A, F)),
        leq("T1.DHAT_LEQ_PHAT", DHat, PHat),
        eq("T1.D_EQ_PHAT_D", Universal, s(D), h(PHat, D)),
        leq("T1.F_LEQ_D", F, D),
        leq("T1.FHAT_LEQ_DHAT", FHat, DHat),
        eq("T1.T_EQ_A_L", Universal, s(T), h(A, L)),
        eq("T1.THAT_EQ_A_LHAT", Universal, s(THat), h(A, LHat)),
        eq("T1.F_T_EQ_A_D", Universal, s(F).plus(s(T)), h(A, D)),
        eq("T1.A_D_EQ_D_MINUS_TC", Universal, h(A, D), s(D).minus(s(Tc))),
        eq("T1.T_EQ_A_D_MINUS_F", Universal, s(T), h(A, D).minus(s(F))),
        eq("T1.TC_EQ_EHAT_D", Universal, s(Tc), h(EHat, D)),
        eq("T1.L_EQ_T_EHAT_D", Universal, s(L), s(T).plus(h(EHat, D))),
        eq("T1.A_D_EQ_D_MINUS_EHAT_D", Universal, h(A, D), s(D).minus(h(EHat, D))),
        eq("T1.F_EQ_A_D_MINUS_T", Universal, s(F), h(A, D).minus(s(T))),
        eq("FU.FHAT_EQ_A", FullyUtilizedOnly, s(FHat), s(A)),
        eq("FU.DHAT_EQ_PHAT", FullyUtilizedOnly, s(DHat), s(PHat)),
        exclusive("ME.A_EHAT", A, EHat),
        exclusive("ME.A_TC", A, Tc),
        exclusive("ME.A_TCHAT", A, TcHat),
        exclusive("ME.F_EHAT", F, EHat),
        exclusive("ME.FHAT_EHAT", FHat, EHat),
        exclusive("ME.T_EHAT", T, EHat),
        exclusive("ME.THAT_EHAT", THat, EHat),
        exclusive("ME.F_TC", F, Tc),
        exclusive("ME.F_TCHAT", F, TcHat),
        exclusive("ME.FHAT_TC", FHat, Tc),
        exclusive("ME.FHAT_TCHAT", FHat, TcHat),
        exclusive("ME.T_TC", T, Tc),
        exclusive("ME.THAT_TCHAT", THat, TcHat),
        exclusive("ME.THAT_TC", THat, Tc),
        exclusive("ME.T_TCHAT", T, TcHat),
        absorb("B.DHAT_TC", DHat, Tc),
        absorb("B.LHAT_TC", LHat, Tc),
        absorb("B.EHAT_TC", EHat, Tc),
        absorb("B.TCHAT_TC", TcHat, Tc),
        eq("B.EHAT_L_EQ_TC", Universal, h(EHat, L), s(Tc)),
        eq("B.EHAT_LHAT_EQ_TCHAT", Universal, h(EHat, LHat), s(TcHat)),
        eq("B.EHAT_DHAT_EQ_TCHAT", Universal, h(EHat, DHat), s(TcHat)),
        eq("B.L_EQ_T_TC", Universal, s(L), s(T).plus(s(Tc))),
        eq("B.D_EQ_F_T_TC", Universal, s(D), s(F).plus(s(T)).plus(s(Tc))),
        eq("CLAIMED.D_TC", ClaimedAudit, h(D, Tc), s(Tc)),
        eq("CLAIMED.L_TC", ClaimedAudit, h(L, Tc), s(Tc)),
        eq("CLAIMED.EHAT_LHAT_TC", ClaimedAudit, h(EHat, LHat), s(Tc)),
        eq("CLAIMED.EHAT_DHAT_TC", ClaimedAudit, h(EHat, DHat), s(Tc)),
        eq("C.L_THAT", Universal, h(L, THat), s(T)),
        absorb("C.DHAT_T", DHat, T),
        absorb("C.LHAT_T", LHat, T),
        absorb("C.DHAT_THAT", DHat, THat),
        absorb("C.LHAT_THAT", LHat, THat),
        absorb("C.A_T", A, T),
        absorb("C.A_THAT", A, THat),
        absorb("D.DHAT_L", DHat, L),
        absorb("D.DHAT_LHAT", DHat, LHat),
        absorb("D.LHAT_L", LHat, L),
        absorb("E.FHAT_F", FHat, F),
        absorb("E.DHAT_D", DHat, D),
        absorb("E.DHAT_F", DHat, F),
        absorb("E.DHAT_FHAT", DHat, FHat),
        absorb("E.A_FHAT", A, FHat),
        eq("X.EHAT_L_NEQ_L", Negative, h(EHat, L), s(L)),
        eq("X.TCHAT_TCHAT_ZERO", Negative, h(TcHat, TcHat), zero()),
    ]
}

pub fn find_identity(id: &str) -> Result<IdentitySpec> {
    list_identities()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Parses a catalogue exported by [`catalogue_json`] (or hand-written in the
/// same shape). Ids must be unique.
pub fn load_catalogue(json: &str) -> Result<Vec<IdentitySpec>> {
    let specs: Vec<IdentitySpec> =
        serde_json::from_str(json).map_err(|e| Error::Format(format!("catalogue: {e}")))?;
    let mut ids: Vec<&str> = specs.iter().map(|s| s.id.as_str()).collect();
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Format(format!("catalogue: duplicate id {:?}", w[0])));
    }
    Ok(specs)
}

pub fn catalogue_json(specs: &[IdentitySpec]) -> String {
    serde_json::to_string_pretty(specs).expect("catalogue serializes")
}

/// Evaluates both sides and compares them cell by cell; the first differing
/// (or `≤`-violating) cell in row-major order is the witness.
pub fn evaluate_identity(
    spec: &IdentitySpec,
    s: &StructureBundle,
    u: &UtilizationBundle,
    labels: &[String],
) -> Result<IdentityVerdict> {
    let attach = |error| Error::Identity { id: spec.id.clone(), error };
    let lhs = spec.lhs.eval(s, u).map_err(attach)?;
    let rhs = spec.rhs.eval(s, u).map_err(attach)?;
    let bad = match spec.relation {
        Relation::Eq => first_difference(&lhs, &rhs),
        Relation::Leq => first_leq_violation(&lhs, &rhs),
    }
    .map_err(attach)?;
    let label = |i: usize| labels.get(i).cloned().unwrap_or_else(|| i.to_string());
    Ok(IdentityVerdict {
        id: spec.id.clone(),
        class: spec.class,
        holds: bad.is_none(),
        witness: bad.map(|(row, col)| Witness {
            row,
            col,
            row_label: label(row),
            col_label: label(col),
            lhs: lhs.get(row, col),
            rhs: rhs.get(row, col),
        }),
    })
}

pub fn audit_dataset(d: &Dataset) -> Result<AuditReport> {
    audit_with(d, &list_identities())
}

/// Builds both bundles and evaluates every spec in `specs`, in order.
pub fn audit_with(d: &Dataset, specs: &[IdentitySpec]) -> Result<AuditReport> {
    let s = build_structure(d.graph())?;
    let u = build_utilization(d, &s)?;
    let fully_utilized = is_fully_utilized(&u, &s);
    let labels = d.graph().labels();
    let verdicts = specs
        .par_iter()
        .map(|spec| {
            let verdict = evaluate_identity(spec, &s, &u, labels)?;
            Ok(AuditEntry {
                formula: spec.formula(),
                applicable: spec.class != IdentityClass::FullyUtilizedOnly || fully_utilized,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AuditReport { dataset: DatasetDescriptor::of(d), fully_utilized, verdicts })
}
