//! The JSON workspace: named algebras, modules, morphisms, subcategories and
//! sequences.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::approx::Subcategory;
use crate::error::{Error, Result, Violation};
use crate::linalg::Matrix;
use crate::modcat::{direct_sum, Algebra, Module, Morphism, Presentation, Sequence};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default)]
    pub subcategories: BTreeMap<String, SubcategorySpec>,
    #[serde(default)]
    pub sequences: BTreeMap<String, SequenceSpec>,
}

/// Either a presentation or an explicit table: `unit` in basis
/// coordinates, `mult[(i * d + j) * d + k]` the coefficient of `e_k` in
/// `e_i * e_j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PresentationSpec {
    TruncatedPolynomial {
        degree: usize,
    },
    PathAlgebra {
        vertices: usize,
        arrows: Vec<(usize, usize)>,
    },
}

/// One square action matrix per basis element of the algebra, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<Vec<Vec<i64>>>,
}

/// `matrix` has one row per target dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubcategorySpec {
    pub generators: Vec<String>,
}

/// Morphism names, left to right.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub maps: Vec<String>,
}

/// A loaded workspace. Every value has passed validation unless it was
/// loaded leniently, in which case the failures are listed separately.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub modules: BTreeMap<String, Module>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub subcategories: BTreeMap<String, Subcategory>,
    pub sequences: BTreeMap<String, Sequence>,
    module_algebra: BTreeMap<String, String>,
    morphism_ends: BTreeMap<String, (String, String)>,
    sequence_maps: BTreeMap<String, Vec<String>>,
    subcategory_generators: BTreeMap<String, Vec<String>>,
}

/// A validation failure, named by the entity it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub kind: &'static str,
    pub name: String,
    pub violation: Violation,
}

fn malformed(s: impl Into<String>) -> Error {
    Error::Malformed(s.into())
}

fn shape(e: Violation) -> Error {
    match e {
        Violation::Shape { .. } | Violation::BadPresentation(_) => Error::Malformed(e.to_string()),
        other => Error::Invalid(other),
    }
}

fn matrix(p: u32, rows: usize, cols: usize, data: &[Vec<i64>], what: &str) -> Result<Matrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(malformed(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let flat = data.iter().flatten().map(|&v| v.rem_euclid(p as i64) as u32).collect();
    Ok(Matrix::from_vec(p, rows, cols, flat))
}

fn rows_of(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|&v| v as i64).collect())
        .collect()
}

impl Workspace {
    /// Parses and validates; the first validation failure is an error.
    pub fn parse(text: &str) -> Result<Workspace> {
        let (ws, failures) = Workspace::parse_lenient(text)?;
        match failures.into_iter().next() {
            Some(f) => Err(Error::Invalid(f.violation)),
            None => Ok(ws),
        }
    }

    /// Parses, keeping values that fail validation and listing the
    /// failures. Malformed input and unknown names are still errors.
    pub fn parse_lenient(text: &str) -> Result<(Workspace, Vec<Failure>)> {
        let file: WorkspaceFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        Workspace::from_file(&file)
    }

    pub fn from_file(file: &WorkspaceFile) -> Result<(Workspace, Vec<Failure>)> {
        let mut ws = Workspace::default();
        let mut failures = Vec::new();
        let mut fail = |kind, name: &str, violation| {
            failures.push(Failure {
                kind,
                name: name.to_string(),
                violation,
            })
        };
        for (name, spec) in &file.algebras {
            let alg = match (&spec.presentation, &spec.unit, &spec.mult) {
                (Some(pres), None, None) => {
                    let pres = match pres {
                        PresentationSpec::TruncatedPolynomial { degree } => {
                            Presentation::TruncatedPolynomial { degree: *degree }
                        }
                        PresentationSpec::PathAlgebra { vertices, arrows } => Presentation::PathAlgebra {
                            vertices: *vertices,
                            arrows: arrows.clone(),
                        },
                    };
                    match Algebra::from_presentation(name.clone(), spec.modulus, pres) {
                        Ok(a) => a,
                        Err(Violation::NotPrime(p)) => {
                            return Err(malformed(format!("algebra {name}: modulus {p} is not prime")))
                        }
                        Err(e) => return Err(shape(e)),
                    }
                }
                (None, Some(unit), Some(mult)) => {
                    let reduce = |v: &[i64]| {
                        v.iter()
                            .map(|&x| x.rem_euclid(spec.modulus.max(1) as i64) as u32)
                            .collect()
                    };
                    let parts = Algebra::from_parts(
                        name.clone(),
                        spec.modulus,
                        reduce(unit),
                        reduce(mult),
                        spec.basis.clone(),
                        None,
                    )
                    .map_err(|e| match e {
                        Violation::NotPrime(p) => malformed(format!("algebra {name}: modulus {p} is not prime")),
                        other => shape(other),
                    })?;
                    match parts.validate() {
                        Ok(()) => Algebra::new(
                            name.clone(),
                            spec.modulus,
                            reduce(unit),
                            reduce(mult),
                            spec.basis.clone(),
                            None,
                        )?,
                        Err(v) => {
                            fail("algebra", name, v);
                            Arc::new(parts)
                        }
                    }
                }
                _ => {
                    return Err(malformed(format!(
                        "algebra {name}: give either a presentation or unit and mult"
                    )))
                }
            };
            ws.algebras.insert(name.clone(), alg);
        }
        for (name, spec) in &file.modules {
            let alg = ws.algebra(&spec.algebra)?.clone();
            let p = alg.modulus();
            let action = spec
                .action
                .iter()
                .map(|a| matrix(p, spec.dim, spec.dim, a, &format!("module {name}")))
                .collect::<Result<Vec<_>>>()?;
            let m = Module::from_parts(&alg, spec.dim, action).map_err(shape)?;
            if let Err(v) = m.validate() {
                fail("module", name, v);
            }
            ws.modules.insert(name.clone(), m);
            ws.module_algebra.insert(name.clone(), spec.algebra.clone());
        }
        for (name, spec) in &file.morphisms {
            let s = ws.module(&spec.source)?.clone();
            let t = ws.module(&spec.target)?.clone();
            if s.algebra() != t.algebra() {
                return Err(Error::Invalid(Violation::AlgebraMismatch));
            }
            let mat = matrix(s.modulus(), t.dim(), s.dim(), &spec.matrix, &format!("morphism {name}"))?;
            let f = Morphism::from_parts(&s, &t, mat).map_err(shape)?;
            if let Err(v) = f.validate() {
                fail("morphism", name, v);
            }
            ws.morphisms.insert(name.clone(), f);
            ws.morphism_ends
                .insert(name.clone(), (spec.source.clone(), spec.target.clone()));
        }
        for (name, spec) in &file.subcategories {
            let gens = spec
                .generators
                .iter()
                .map(|g| ws.module(g).cloned())
                .collect::<Result<Vec<_>>>()?;
            ws.subcategories
                .insert(name.clone(), Subcategory::new(name.clone(), gens)?);
            ws.subcategory_generators.insert(name.clone(), spec.generators.clone());
        }
        for (name, spec) in &file.sequences {
            let maps = spec
                .maps
                .iter()
                .map(|f| ws.morphism(f).cloned())
                .collect::<Result<Vec<_>>>()?;
            match Sequence::new(maps) {
                Ok(s) => {
                    ws.sequences.insert(name.clone(), s);
                }
                Err(Error::Invalid(v)) => fail("sequence", name, v),
                Err(e) => return Err(e),
            }
            ws.sequence_maps.insert(name.clone(), spec.maps.clone());
        }
        Ok((ws, failures))
    }

    /// The canonical file: presentations where known, matrices reduced.
    pub fn to_file(&self) -> WorkspaceFile {
        let mut file = WorkspaceFile::default();
        for (name, a) in &self.algebras {
            let spec = match a.presentation() {
                Some(Presentation::TruncatedPolynomial { degree }) => AlgebraSpec {
                    modulus: a.modulus() as u64,
                    presentation: Some(PresentationSpec::TruncatedPolynomial { degree: *degree }),
                    basis: None,
                    unit: None,
                    mult: None,
                },
                Some(Presentation::PathAlgebra { vertices, arrows }) => AlgebraSpec {
                    modulus: a.modulus() as u64,
                    presentation: Some(PresentationSpec::PathAlgebra {
                        vertices: *vertices,
                        arrows: arrows.clone(),
                    }),
                    basis: None,
                    unit: None,
                    mult: None,
                },
                None => {
                    let default: Vec<String> = (0..a.dim()).map(|i| format!("e{i}")).collect();
                    AlgebraSpec {
                        modulus: a.modulus() as u64,
                        presentation: None,
                        basis: (a.basis_names() != default.as_slice()).then(|| a.basis_names().to_vec()),
                        unit: Some(a.unit().iter().map(|&v| v as i64).collect()),
                        mult: Some(a.structure_constants().iter().map(|&v| v as i64).collect()),
                    }
                }
            };
            file.algebras.insert(name.clone(), spec);
        }
        for (name, m) in &self.modules {
            file.modules.insert(
                name.clone(),
                ModuleSpec {
                    algebra: self.module_algebra[name].clone(),
                    dim: m.dim(),
                    action: m.actions().iter().map(rows_of).collect(),
                },
            );
        }
        for (name, f) in &self.morphisms {
            let (s, t) = &self.morphism_ends[name];
            file.morphisms.insert(
                name.clone(),
                MorphismSpec {
                    source: s.clone(),
                    target: t.clone(),
                    matrix: rows_of(f.matrix()),
                },
            );
        }
        for (name, gens) in &self.subcategory_generators {
            file.subcategories.insert(
                name.clone(),
                SubcategorySpec {
                    generators: gens.clone(),
                },
            );
        }
        for (name, maps) in &self.sequence_maps {
            file.sequences.insert(name.clone(), SequenceSpec { maps: maps.clone() });
        }
        file
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn insert_algebra(&mut self, a: &Arc<Algebra>) {
        self.algebras.insert(a.name().to_string(), a.clone());
    }

    /// Adds `m` under `name`, or returns the name it already has.
    pub fn insert_module(&mut self, name: &str, m: &Module) -> String {
        if let Some(existing) = self.module_name(m) {
            return existing.to_string();
        }
        let alg = self
            .algebras
            .iter()
            .find(|(_, a)| *a == m.algebra())
            .map(|(k, _)| k.clone())
            .expect("algebra inserted first");
        self.modules.insert(name.to_string(), m.clone());
        self.module_algebra.insert(name.to_string(), alg);
        name.to_string()
    }

    /// Adds `f`, naming unnamed ends `{name}_source` and `{name}_target`.
    pub fn insert_morphism(&mut self, name: &str, f: &Morphism) -> String {
        let s = self.insert_module(&format!("{name}_source"), f.source());
        let t = self.insert_module(&format!("{name}_target"), f.target());
        self.morphisms.insert(name.to_string(), f.clone());
        self.morphism_ends.insert(name.to_string(), (s, t));
        name.to_string()
    }

    pub fn insert_subcategory(&mut self, name: &str, generators: &[&str]) -> Result<()> {
        let gens = generators
            .iter()
            .map(|g| self.module(g).cloned())
            .collect::<Result<Vec<_>>>()?;
        self.subcategories
            .insert(name.to_string(), Subcategory::new(name, gens)?);
        self.subcategory_generators
            .insert(name.to_string(), generators.iter().map(|g| g.to_string()).collect());
        Ok(())
    }

    /// Adds `seq`, naming its maps `{name}_0`, `{name}_1`, ... unless an
    /// equal morphism is already named.
    pub fn insert_sequence(&mut self, name: &str, seq: &Sequence) {
        let mut names = Vec::new();
        for (i, f) in seq.maps().iter().enumerate() {
            let existing = self.morphisms.iter().find(|(_, g)| *g == f).map(|(k, _)| k.clone());
            names.push(existing.unwrap_or_else(|| self.insert_morphism(&format!("{name}_{i}"), f)));
        }
        self.sequences.insert(name.to_string(), seq.clone());
        self.sequence_maps.insert(name.to_string(), names);
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra>> {
        self.algebras.get(name).ok_or_else(|| Error::UnknownName(name.into()))
    }

    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules.get(name).ok_or_else(|| Error::UnknownName(name.into()))
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism> {
        self.morphisms.get(name).ok_or_else(|| Error::UnknownName(name.into()))
    }

    pub fn sequence(&self, name: &str) -> Result<&Sequence> {
        self.sequences.get(name).ok_or_else(|| Error::UnknownName(name.into()))
    }

    /// A module name, or names joined by `+` for their direct sum.
    pub fn module_expr(&self, expr: &str) -> Result<Module> {
        let parts = expr
            .split('+')
            .map(|n| self.module(n.trim()).cloned())
            .collect::<Result<Vec<_>>>()?;
        if parts.len() == 1 {
            return Ok(parts.into_iter().next().expect("one part"));
        }
        Ok(direct_sum(&parts).object)
    }

    /// A subcategory name, or `add(A, B, ...)` over module expressions.
    pub fn subcategory(&self, expr: &str) -> Result<Subcategory> {
        if let Some(c) = self.subcategories.get(expr) {
            return Ok(c.clone());
        }
        let inner = expr
            .trim()
            .strip_prefix("add(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownName(expr.into()))?;
        let gens = inner
            .split(',')
            .map(|g| self.module_expr(g.trim()))
            .collect::<Result<Vec<_>>>()?;
        Subcategory::new(expr.trim(), gens)
    }

    pub fn module_name(&self, m: &Module) -> Option<&str> {
        self.modules.iter().find(|(_, v)| *v == m).map(|(k, _)| k.as_str())
    }
}
