//! The shipped matrices, systems and derivations. Files are embedded at build
//! time, validated on first use, and can be exported as plain files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::calculus::{
    parse_derivation_file, rule_sound, verify_linear, verify_tree, Derivation, DerivationFile, FileError, HSystem,
    Kind, LinearDerivation, Rejection, RuleSchema, SystemError,
};
use crate::formula::Signature;
use crate::semantics::{read_matrix, Algebra, Matrix, SemanticsError};
use crate::transforms::{assemble_bk_systems, bk29_derivation, lifted_derivation_scheme, TransformError};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown matrix {0}")]
    UnknownMatrix(String),
    #[error("unknown system {0}")]
    UnknownSystem(String),
    #[error("unknown derivation {0}")]
    UnknownDerivation(String),
    #[error("matrix file {id}: {source}")]
    Matrix { id: String, source: SemanticsError },
    #[error("system {id}: {source}")]
    System { id: String, source: SystemError },
    #[error("derivation {id}: {source}")]
    File { id: String, source: FileError },
    #[error("derivation {id} does not verify: {source}")]
    NotVerified { id: String, source: Rejection },
    #[error("derivation {0} is a tree where a linear derivation is needed")]
    NotLinear(String),
    #[error("rule {rule} of {system} is unsound for {matrix}")]
    Unsound { system: String, rule: String, matrix: String },
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// What a corpus file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Matrix,
    System,
    Derivation,
}

/// One embedded corpus file.
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    /// Path relative to the corpus root.
    pub file: &'static str,
    pub text: &'static str,
    pub provenance: &'static str,
}

macro_rules! entry {
    ($id:expr, $kind:ident, $dir:literal, $file:literal, $prov:expr) => {
        CorpusEntry {
            id: $id,
            kind: EntryKind::$kind,
            file: concat!($dir, "/", $file),
            text: include_str!(concat!("../corpus/", $dir, "/", $file)),
            provenance: $prov,
        }
    };
}

pub const MATRICES: [CorpusEntry; 5] = [
    entry!("CL2", Matrix, "matrices", "cl2.mtx", "two-valued Boolean matrix"),
    entry!("WK", Matrix, "matrices", "wk.mtx", "weak Kleene algebra, nothing designated"),
    entry!("PWK", Matrix, "matrices", "pwk.mtx", "weak Kleene algebra designating u and t"),
    entry!("BK", Matrix, "matrices", "bk.mtx", "weak Kleene algebra designating t"),
    entry!("Mprime", Matrix, "matrices", "mprime.mtx", "BK matrix with t and f renamed"),
];

pub const SYSTEM_FILES: [CorpusEntry; 5] = [
    entry!("SF-CL", System, "systems", "sf-cl.sys", "Set-Fmla axioms for classical implication and negation"),
    entry!("SS-CL", System, "systems", "ss-cl.sys", "Set-Set rules for classical logic"),
    entry!("R_PWK", System, "systems", "r-pwk.sys", "analytic Set-Set rules for PWK"),
    entry!("H_PWK", System, "systems", "h-pwk.sys", "Set-Fmla rules for PWK"),
    entry!("R_BK", System, "systems", "r-bk.sys", "analytic Set-Set rules for BK"),
];

pub const DERIVATIONS: [CorpusEntry; 15] = [
    entry!("cl-p-imp-p", Derivation, "derivations", "cl-p-imp-p.drv", "five-step proof of p -> p"),
    entry!("ss-cl-excluded-middle", Derivation, "derivations", "ss-cl-excluded-middle.drv", "tree proof of ~p | p"),
    entry!("ss-cl-demorgan", Derivation, "derivations", "ss-cl-demorgan.drv", "tree proof of ~(p & q) |- ~p, ~q"),
    entry!("bk-demorgan", Derivation, "derivations", "bk-demorgan.drv", "R_BK_star tree proof of ~(p & q) |- ~p | ~q"),
    entry!("bk25", Derivation, "derivations", "bk25.drv", "six-step derivation of BK25"),
    entry!("bk26", Derivation, "derivations", "bk26.drv", "BK26 from BK2 and BK20"),
    entry!("bk27", Derivation, "derivations", "bk27.drv", "BK27 from BK21 and BK23"),
    entry!("bk28", Derivation, "derivations", "bk28.drv", "six-step derivation of BK28"),
    entry!("bk29-lemma", Derivation, "derivations", "bk29-lemma.drv", "fourteen-step auxiliary derivation for BK29"),
    entry!("bk29-mirror", Derivation, "derivations", "bk29-mirror.drv", "auxiliary derivation with p and q exchanged (reconstructed)"),
    entry!("bk29", Derivation, "derivations", "bk29.drv", "full BK29 derivation, generated from the two auxiliary ones"),
    entry!("bk30", Derivation, "derivations", "bk30.drv", "BK30 from BK16*, BK23, BK2.or and BK29"),
    entry!("lift-bk3", Derivation, "derivations", "lift-bk3.drv", "double lift of BK3"),
    entry!("lift-bk4", Derivation, "derivations", "lift-bk4.drv", "double lift of BK4"),
    entry!("lift-bk12", Derivation, "derivations", "lift-bk12.drv", "double lift of BK12"),
];

/// Identifiers accepted by [`get_system`].
pub const SYSTEM_IDS: [&str; 7] = ["SF-CL", "SS-CL", "R_PWK", "H_PWK", "R_BK", "R_BK_star", "H_BK"];

/// Derived rules of `H_BK` backed by a corpus derivation, in registration order.
const BK_DERIVED_FILES: [(&str, &str); 5] =
    [("BK25", "bk25"), ("BK26", "bk26"), ("BK28", "bk28"), ("BK29", "bk29"), ("BK30", "bk30")];

fn find(entries: &[CorpusEntry], id: &str) -> Option<CorpusEntry> {
    entries.iter().find(|e| e.id == id).copied()
}

/// Loads a matrix. `CL` is accepted as an alias of `CL2`.
pub fn get_matrix(id: &str) -> Result<Matrix, CorpusError> {
    let id = if id == "CL" { "CL2" } else { id };
    let e = find(&MATRICES, id).ok_or_else(|| CorpusError::UnknownMatrix(id.into()))?;
    read_matrix(e.text).map_err(|source| CorpusError::Matrix { id: id.into(), source })
}

/// The two-valued Boolean matrix.
pub fn classical_matrix() -> &'static Matrix {
    static CL: OnceLock<Matrix> = OnceLock::new();
    CL.get_or_init(|| get_matrix("CL2").expect("embedded matrix"))
}

/// The three-valued weak Kleene algebra.
pub fn weak_kleene_algebra() -> Algebra {
    get_matrix("WK").expect("embedded matrix").algebra
}

/// The matrix each system is sound for.
pub fn declared_matrix(system: &str) -> Option<&'static str> {
    Some(match system {
        "SF-CL" | "SS-CL" => "CL2",
        "R_PWK" | "H_PWK" => "PWK",
        "R_BK" | "R_BK_star" | "H_BK" => "BK",
        _ => return None,
    })
}

/// Signature of a shipped system, without building it.
pub fn system_signature(id: &str) -> Option<Signature> {
    match id {
        "SF-CL" => Some(Signature::imp_not()),
        _ if SYSTEM_IDS.contains(&id) => Some(Signature::and_or_not()),
        _ => None,
    }
}

fn parse_entry(e: &CorpusEntry) -> Result<DerivationFile, CorpusError> {
    parse_derivation_file(e.text, &system_signature).map_err(|source| CorpusError::File { id: e.id.into(), source })
}

fn load_system_file(id: &str) -> Result<HSystem, CorpusError> {
    let e = find(&SYSTEM_FILES, id).ok_or_else(|| CorpusError::UnknownSystem(id.into()))?;
    HSystem::from_text(e.text).map_err(|source| CorpusError::System { id: id.into(), source })
}

fn linear_entry(id: &str) -> Result<(DerivationFile, LinearDerivation), CorpusError> {
    let e = find(&DERIVATIONS, id).ok_or_else(|| CorpusError::UnknownDerivation(id.into()))?;
    let file = parse_entry(&e)?;
    match &file.derivation {
        Derivation::Linear(d) => {
            let d = d.clone();
            Ok((file, d))
        }
        Derivation::Tree(_) => Err(CorpusError::NotLinear(id.into())),
    }
}

fn register_entry(h: &mut HSystem, name: &str, id: &str) -> Result<(), CorpusError> {
    let (file, d) = linear_entry(id)?;
    let schema = RuleSchema::new(name, file.claim.antecedent, file.claim.succedent);
    h.register_derived(schema, d).map_err(|source| CorpusError::System { id: format!("H_BK/{name}"), source })
}

/// `H_BK` with BK27, the double lifts and BK25, BK26 and BK28 registered,
/// but not BK29 or BK30. This is the system the BK29 derivation is generated in.
pub fn h_bk_before_bk29() -> Result<HSystem, CorpusError> {
    let r_bk = load_system_file("R_BK")?;
    let (_, mut h) = assemble_bk_systems(&r_bk)?;
    register_entry(&mut h, "BK27", "bk27")?;
    let core: Vec<String> =
        h.rules().iter().filter(|r| !r.name.ends_with(".or") && r.name != "BK1*").map(|r| r.name.clone()).collect();
    for name in core {
        let (schema, d) = lifted_derivation_scheme(&h, &name)?;
        h.register_derived(schema, d).map_err(|source| CorpusError::System { id: format!("H_BK/{name}.or.or"), source })?;
    }
    for (name, id) in BK_DERIVED_FILES.iter().filter(|(n, _)| *n != "BK29" && *n != "BK30") {
        register_entry(&mut h, name, id)?;
    }
    Ok(h)
}

/// Rebuilds the full BK29 derivation from the two auxiliary derivations.
pub fn regenerate_bk29() -> Result<LinearDerivation, CorpusError> {
    let h = h_bk_before_bk29()?;
    let (_, lemma) = linear_entry("bk29-lemma")?;
    let (_, mirror) = linear_entry("bk29-mirror")?;
    Ok(bk29_derivation(&h, &lemma, &mirror)?)
}

fn check_sound(sys: &HSystem) -> Result<(), CorpusError> {
    let Some(mid) = declared_matrix(&sys.name) else { return Ok(()) };
    let m = get_matrix(mid)?;
    match sys.rules().iter().find(|r| !rule_sound(&m, r).holds) {
        Some(r) => Err(CorpusError::Unsound { system: sys.name.clone(), rule: r.name.clone(), matrix: mid.into() }),
        None => Ok(()),
    }
}

fn build_all() -> Result<BTreeMap<&'static str, Arc<HSystem>>, CorpusError> {
    let mut out = BTreeMap::new();
    for id in ["SF-CL", "SS-CL", "R_PWK", "H_PWK", "R_BK"] {
        out.insert(id, load_system_file(id)?);
    }
    let (r_bk_star, _) = assemble_bk_systems(&out["R_BK"])?;
    let mut h = h_bk_before_bk29()?;
    register_entry(&mut h, "BK29", "bk29")?;
    register_entry(&mut h, "BK30", "bk30")?;
    out.insert("R_BK_star", r_bk_star);
    out.insert("H_BK", h);
    for sys in out.values() {
        check_sound(sys)?;
    }
    Ok(out.into_iter().map(|(k, v)| (k, Arc::new(v))).collect())
}

fn systems() -> Result<&'static BTreeMap<&'static str, Arc<HSystem>>, String> {
    static SYSTEMS: OnceLock<Result<BTreeMap<&'static str, Arc<HSystem>>, String>> = OnceLock::new();
    SYSTEMS.get_or_init(|| build_all().map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
}

/// Loads a shipped system. `H_BK` comes with its registry of derived rules
/// (BK25 to BK30 and the double lifts of every lifted rule).
pub fn get_system(id: &str) -> Result<Arc<HSystem>, CorpusError> {
    if !SYSTEM_IDS.contains(&id) {
        return Err(CorpusError::UnknownSystem(id.into()));
    }
    let all = systems().map_err(|msg| CorpusError::System {
        id: id.into(),
        source: SystemError::Format { line: 0, msg },
    })?;
    Ok(all[id].clone())
}

/// A loaded, verified corpus derivation.
#[derive(Clone, Debug)]
pub struct CorpusDerivation {
    pub id: &'static str,
    pub provenance: &'static str,
    pub file: DerivationFile,
}

/// Loads a derivation and checks it against its system.
pub fn get_derivation(id: &str) -> Result<CorpusDerivation, CorpusError> {
    let e = find(&DERIVATIONS, id).ok_or_else(|| CorpusError::UnknownDerivation(id.into()))?;
    let file = parse_entry(&e)?;
    let sys = get_system(&file.system)?;
    let checked = match &file.derivation {
        Derivation::Linear(d) => verify_linear(&sys, d, &file.claim).map(|_| ()),
        Derivation::Tree(t) => verify_tree(&sys, t, &file.claim),
    };
    checked.map_err(|source| CorpusError::NotVerified { id: id.into(), source })?;
    Ok(CorpusDerivation { id: e.id, provenance: e.provenance, file })
}

/// Writes every corpus file under `root/{matrices,systems,derivations}`.
/// Systems assembled in code (`R_BK_star`, `H_BK`) are rendered from their
/// loaded form. Returns the written paths, relative to `root`.
pub fn export(root: &Path) -> Result<Vec<String>, CorpusError> {
    let mut files: Vec<(String, String)> = Vec::new();
    for e in MATRICES.iter().chain(SYSTEM_FILES.iter()).chain(DERIVATIONS.iter()) {
        files.push((e.file.to_string(), e.text.to_string()));
    }
    for (id, file) in [("R_BK_star", "systems/r-bk-star.sys"), ("H_BK", "systems/h-bk.sys")] {
        files.push((file.to_string(), get_system(id)?.to_text()));
    }
    for (rel, text) in &files {
        let path = root.join(rel);
        let io = |source| CorpusError::Io { path: path.display().to_string(), source };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        std::fs::write(&path, text).map_err(io)?;
    }
    Ok(files.into_iter().map(|(rel, _)| rel).collect())
}

/// Kind of a system by id, without building it.
pub fn system_kind(id: &str) -> Option<Kind> {
    match id {
        "SF-CL" | "H_PWK" | "H_BK" => Some(Kind::SetFmla),
        "SS-CL" | "R_PWK" | "R_BK" | "R_BK_star" => Some(Kind::SetSet),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::write_linear;

    #[test]
    fn all_matrices_load() {
        for e in MATRICES {
            get_matrix(e.id).unwrap();
        }
        assert!(matches!(get_matrix("K3"), Err(CorpusError::UnknownMatrix(_))));
        assert_eq!(get_matrix("CL").unwrap().name, "CL2");
    }

    #[test]
    fn system_sizes() {
        let sizes = [("SF-CL", 4), ("SS-CL", 8), ("R_PWK", 20), ("H_PWK", 23), ("R_BK", 20), ("R_BK_star", 20), ("H_BK", 47)];
        for (id, n) in sizes {
            assert_eq!(get_system(id).unwrap().rules().len(), n, "{id}");
        }
        let h = get_system("H_BK").unwrap();
        assert!(h.rule("BK1*.or").is_none());
        for name in ["BK25", "BK26", "BK27", "BK28", "BK29", "BK30", "BK3.or.or"] {
            assert!(h.derived(name).is_some(), "{name}");
        }
    }

    #[test]
    fn every_derivation_verifies() {
        for e in DERIVATIONS {
            get_derivation(e.id).unwrap_or_else(|err| panic!("{}: {err}", e.id));
        }
    }

    #[test]
    fn bk29_file_matches_regeneration() {
        let d = regenerate_bk29().unwrap();
        let (file, _) = linear_entry("bk29").unwrap();
        let text = write_linear("H_BK", &file.claim, &d);
        let embedded = find(&DERIVATIONS, "bk29").unwrap().text;
        if std::env::var_os("WKH_BLESS").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/derivations/bk29.drv");
            std::fs::write(path, format!("{BK29_HEADER}{text}")).unwrap();
            return;
        }
        assert_eq!(embedded.strip_prefix(BK29_HEADER).unwrap_or(embedded), text);
    }

    const BK29_HEADER: &str = "# BK29: ~p | ~q |- ~(p & q). Generated by regenerate_bk29; do not edit.\n";
}
