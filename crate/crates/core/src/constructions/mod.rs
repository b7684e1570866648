//! Builders for the group families in use, fixture ingestion and the corpus.

pub mod catalog;
pub mod corpus;
pub mod families;
pub mod field;

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, GroupFile, Subgroup};
use crate::perm::Permutation;
use crate::theorems::describe_normal;

pub use catalog::{example_catalog, CatalogEntry, NormalSelector};
pub use corpus::{corpus, fingerprint, CorpusEntry, Fingerprint};
pub use field::Matrix;

/// A group family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum GroupSpec {
    Cyclic { n: usize },
    /// Dihedral group of the given order (`2m`).
    Dihedral { order: usize },
    /// Generalized quaternion group of order `2^k`.
    Quaternion { order: usize },
    Dicyclic { order: usize },
    Symmetric { n: usize },
    Alternating { n: usize },
    ElementaryAbelian { p: u64, k: usize },
    ExtraspecialP3 { p: u64 },
    Sl23,
    Gl23,
    /// Matrix group acting on nonzero vectors of GF(p)^n.
    Linear { p: u32, n: usize, matrices: Vec<Matrix> },
    /// Translations of GF(p)^n extended by the given matrices.
    Affine { p: u32, n: usize, matrices: Vec<Matrix> },
    /// Full affine group AGL(n, p).
    Agl { p: u32, n: usize },
    /// Γ(p^n) with distinguished `N = K·S`, `|S| = s`.
    Semilinear { p: u32, n: u32, s: u32 },
    /// Like `Semilinear` with the multiplier group cut down to order `m`.
    SemilinearSub { p: u32, n: u32, m: u32, s: u32 },
    FrobeniusPq { p: u64, q: u64 },
    DirectProduct { left: Box<GroupSpec>, right: Box<GroupSpec> },
    /// `action[i][j]`: image of generator `j` of `normal` under generator `i`
    /// of `acting`, as a permutation in `normal`'s representation.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<Vec<u32>>>,
    },
    /// Catalog entry by id, e.g. `ex8.4`.
    Example { id: String },
    /// Fixture shipped with the library, by file stem.
    Embedded { name: String },
    Fixture { path: PathBuf },
}

/// A built group with its distinguished normal subgroups.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub name: String,
    pub group: FiniteGroup,
    pub normals: Vec<(String, Subgroup)>,
}

impl BuiltGroup {
    fn plain(name: String, group: FiniteGroup) -> BuiltGroup {
        BuiltGroup {
            name,
            group,
            normals: Vec::new(),
        }
    }

    pub fn normal(&self, name: &str) -> Option<&Subgroup> {
        self.normals.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

fn fmt_matrices(ms: &[Matrix]) -> String {
    ms.iter()
        .map(|m| {
            m.iter()
                .flatten()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Cyclic { n } => write!(f, "cyclic:{n}"),
            Dihedral { order } => write!(f, "dihedral:{order}"),
            Quaternion { order } => write!(f, "quaternion:{order}"),
            Dicyclic { order } => write!(f, "dicyclic:{order}"),
            Symmetric { n } => write!(f, "symmetric:{n}"),
            Alternating { n } => write!(f, "alternating:{n}"),
            ElementaryAbelian { p, k } => write!(f, "elementary_abelian:{p}:{k}"),
            ExtraspecialP3 { p } => write!(f, "extraspecial:{p}"),
            Sl23 => write!(f, "sl23"),
            Gl23 => write!(f, "gl23"),
            Linear { p, n, matrices } => write!(f, "linear:{p}:{n}:{}", fmt_matrices(matrices)),
            Affine { p, n, matrices } => write!(f, "affine:{p}:{n}:{}", fmt_matrices(matrices)),
            Agl { p, n } => write!(f, "agl:{p}:{n}"),
            Semilinear { p, n, s } => write!(f, "semilinear:{p}:{n}:{s}"),
            SemilinearSub { p, n, m, s } => write!(f, "semilinear_sub:{p}:{n}:{m}:{s}"),
            FrobeniusPq { p, q } => write!(f, "frobenius:{p}:{q}"),
            DirectProduct { left, right } => write!(f, "{left}*{right}"),
            Semidirect { normal, acting, .. } => write!(f, "({normal})⋊({acting})"),
            Example { id } => write!(f, "example:{id}"),
            Embedded { name } => write!(f, "embedded:{name}"),
            Fixture { path } => write!(f, "{}", path.display()),
        }
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| GroupError::Parse(format!("expected a number for {what}, got '{s}'")))
}

fn parse_matrices(s: &str, n: usize) -> Result<Vec<Matrix>> {
    s.split(';')
        .filter(|m| !m.is_empty())
        .map(|m| {
            let entries: Vec<u32> = m
                .split(',')
                .map(|x| parse_num(x.trim(), "matrix entry"))
                .collect::<Result<_>>()?;
            if entries.len() != n * n {
                return Err(GroupError::Parse(format!(
                    "matrix '{m}' needs {} entries",
                    n * n
                )));
            }
            Ok(entries.chunks(n).map(|r| r.to_vec()).collect())
        })
        .collect()
}

impl GroupSpec {
    /// Parses the builtin mini-language `family:param:param`, with `A*B` for
    /// direct products. An optional `builtin:` prefix is accepted.
    ///
    /// Families: `cyclic:n`, `dihedral:2m`, `quaternion:2^k`, `dicyclic:4t`,
    /// `symmetric:n`, `alternating:n`, `elementary_abelian:p:k`,
    /// `extraspecial:p`, `sl23`, `gl23`, `linear:p:n:M`, `affine:p:n:M`,
    /// `agl:p:n`, `semilinear:p:n:s`, `semilinear_sub:p:n:m:s`,
    /// `frobenius:p:q`, `example:<id>`, `embedded:<name>`. Matrices `M` are
    /// row-major comma-separated entries, several matrices joined by `;`.
    pub fn parse(input: &str) -> Result<GroupSpec> {
        let s = input.trim();
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        if let Some((left, right)) = s.split_once('*') {
            return Ok(GroupSpec::DirectProduct {
                left: Box::new(GroupSpec::parse(left)?),
                right: Box::new(GroupSpec::parse(right)?),
            });
        }
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(GroupError::Parse(format!(
                    "'{}' takes {k} parameter(s): '{s}'",
                    parts[0]
                )))
            }
        };
        use GroupSpec::*;
        let spec = match parts[0] {
            "cyclic" => {
                arity(1)?;
                Cyclic { n: parse_num(parts[1], "n")? }
            }
            "dihedral" => {
                arity(1)?;
                Dihedral { order: parse_num(parts[1], "order")? }
            }
            "quaternion" => {
                arity(1)?;
                Quaternion { order: parse_num(parts[1], "order")? }
            }
            "dicyclic" => {
                arity(1)?;
                Dicyclic { order: parse_num(parts[1], "order")? }
            }
            "symmetric" => {
                arity(1)?;
                Symmetric { n: parse_num(parts[1], "n")? }
            }
            "alternating" => {
                arity(1)?;
                Alternating { n: parse_num(parts[1], "n")? }
            }
            "elementary_abelian" => {
                arity(2)?;
                ElementaryAbelian {
                    p: parse_num(parts[1], "p")?,
                    k: parse_num(parts[2], "k")?,
                }
            }
            "extraspecial" | "extraspecial_p3" => {
                arity(1)?;
                ExtraspecialP3 { p: parse_num(parts[1], "p")? }
            }
            "sl23" => {
                arity(0)?;
                Sl23
            }
            "gl23" => {
                arity(0)?;
                Gl23
            }
            "linear" | "affine" => {
                arity(3)?;
                let p = parse_num(parts[1], "p")?;
                let n = parse_num(parts[2], "n")?;
                let matrices = parse_matrices(parts[3], n)?;
                if parts[0] == "linear" {
                    Linear { p, n, matrices }
                } else {
                    Affine { p, n, matrices }
                }
            }
            "agl" => {
                arity(2)?;
                Agl {
                    p: parse_num(parts[1], "p")?,
                    n: parse_num(parts[2], "n")?,
                }
            }
            "semilinear" => {
                arity(3)?;
                Semilinear {
                    p: parse_num(parts[1], "p")?,
                    n: parse_num(parts[2], "n")?,
                    s: parse_num(parts[3], "s")?,
                }
            }
            "semilinear_sub" => {
                arity(4)?;
                SemilinearSub {
                    p: parse_num(parts[1], "p")?,
                    n: parse_num(parts[2], "n")?,
                    m: parse_num(parts[3], "m")?,
                    s: parse_num(parts[4], "s")?,
                }
            }
            "frobenius" => {
                arity(2)?;
                FrobeniusPq {
                    p: parse_num(parts[1], "p")?,
                    q: parse_num(parts[2], "q")?,
                }
            }
            "example" => {
                arity(1)?;
                Example { id: parts[1].to_string() }
            }
            "embedded" => {
                arity(1)?;
                Embedded { name: parts[1].to_string() }
            }
            other => return Err(GroupError::Parse(format!("unknown family '{other}'"))),
        };
        Ok(spec)
    }
}

/// Builds a group from its spec.
pub fn build(spec: &GroupSpec) -> Result<BuiltGroup> {
    use GroupSpec::*;
    let name = spec.to_string();
    let plain = |g: FiniteGroup| Ok(BuiltGroup::plain(name.clone(), g));
    match spec {
        Cyclic { n } => plain(families::cyclic(*n)?),
        Dihedral { order } => plain(families::dihedral(*order)?),
        Quaternion { order } => plain(families::quaternion(*order)?),
        Dicyclic { order } => plain(families::dicyclic(*order)?),
        Symmetric { n } => plain(families::symmetric(*n)?),
        Alternating { n } => plain(families::alternating(*n)?),
        ElementaryAbelian { p, k } => plain(families::elementary_abelian(*p, *k)?),
        ExtraspecialP3 { p } => {
            let g = families::extraspecial_p3(*p)?;
            let z = g.center();
            Ok(BuiltGroup {
                name,
                group: g,
                normals: vec![("Z".into(), z)],
            })
        }
        Sl23 => plain(families::linear_on_nonzero(3, 2, &field::sl_generators(3, 2))?),
        Gl23 => plain(families::linear_on_nonzero(3, 2, &field::gl_generators(3, 2))?),
        Linear { p, n, matrices } => plain(families::linear_on_nonzero(*p, *n, matrices)?),
        Affine { p, n, matrices } => affine_built(name, *p, *n, matrices),
        Agl { p, n } => affine_built(name, *p, *n, &field::gl_generators(*p, *n)),
        Semilinear { p, n, s } => {
            let (g, ks) = families::semilinear(*p, *n, *s)?;
            let k = families::translations(&g, *n as usize);
            Ok(BuiltGroup {
                name,
                group: g,
                normals: vec![("N".into(), ks), ("K".into(), k)],
            })
        }
        SemilinearSub { p, n, m, s } => {
            let (g, ks) = families::semilinear_sub(*p, *n, *m, true, *s)?;
            let k = families::translations(&g, *n as usize);
            Ok(BuiltGroup {
                name,
                group: g,
                normals: vec![("N".into(), ks), ("K".into(), k)],
            })
        }
        FrobeniusPq { p, q } => plain(families::frobenius_pq(*p, *q)?),
        DirectProduct { left, right } => {
            let a = build(left)?;
            let b = build(right)?;
            plain(families::direct_product(&a.group, &b.group)?)
        }
        Semidirect {
            normal,
            acting,
            action,
        } => {
            let n = build(normal)?.group;
            let h = build(acting)?.group;
            let indices = action
                .iter()
                .map(|images| {
                    images
                        .iter()
                        .map(|p| {
                            let perm = Permutation::from_images(p.clone())?;
                            n.index_of(&perm).ok_or_else(|| {
                                GroupError::InvalidSpec(
                                    "action image is not an element of the normal factor".into(),
                                )
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let (g, k) = families::semidirect(&n, &h, &indices)?;
            Ok(BuiltGroup {
                name,
                group: g,
                normals: vec![("N".into(), k)],
            })
        }
        Example { id } => catalog::build_example(id),
        Embedded { name } => {
            let text = catalog::embedded_fixture(name)
                .ok_or_else(|| GroupError::InvalidSpec(format!("no embedded fixture '{name}'")))?;
            ingest_str(text)
        }
        Fixture { path } => ingest(path),
    }
}

fn affine_built(name: String, p: u32, n: usize, matrices: &[Matrix]) -> Result<BuiltGroup> {
    let g = families::affine(p, n, matrices)?;
    let t = families::translations(&g, n);
    Ok(BuiltGroup {
        name,
        group: g,
        normals: vec![("translations".into(), t)],
    })
}

/// Reads and validates a JSON group file.
pub fn ingest(path: &Path) -> Result<BuiltGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
    ingest_str(&text)
}

pub fn ingest_str(text: &str) -> Result<BuiltGroup> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
    let group = FiniteGroup::from_file(&file)?;
    Ok(BuiltGroup::plain(file.name, group))
}

/// Parses a `--group` argument: a builtin spec or a path to a JSON file.
pub fn resolve(source: &str) -> Result<GroupSpec> {
    if let Some(path) = source.strip_prefix("file:") {
        return Ok(GroupSpec::Fixture { path: path.into() });
    }
    if source.ends_with(".json") {
        return Ok(GroupSpec::Fixture { path: source.into() });
    }
    GroupSpec::parse(source)
}

/// Resolves a normal-subgroup selector: `all` (every nontrivial normal
/// subgroup), `index:i` (position in the normal lattice) or a
/// [`NormalSelector`]. Returns descriptions with the subgroups.
pub fn select_normals(built: &BuiltGroup, selector: &str) -> Result<Vec<(String, Subgroup)>> {
    let g = &built.group;
    let lattice = g.normal_subgroups();
    if selector == "all" {
        return Ok(lattice
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_trivial())
            .map(|(i, n)| (describe_normal(i), n.clone()))
            .collect());
    }
    if let Some(i) = selector.strip_prefix("index:") {
        let i: usize = i
            .parse()
            .map_err(|_| GroupError::InvalidSpec(format!("bad index '{i}'")))?;
        let n = lattice.get(i).ok_or_else(|| {
            GroupError::InvalidSpec(format!(
                "index {i} is out of range (the normal lattice has {} members)",
                lattice.len()
            ))
        })?;
        return Ok(vec![(describe_normal(i), n.clone())]);
    }
    let sel: NormalSelector = selector.parse()?;
    let n = sel
        .resolve(built)
        .ok_or_else(|| GroupError::InvalidSpec(format!("selector '{sel}' matches no normal subgroup")))?;
    if !g.is_normal(&n) {
        return Err(GroupError::InvalidSpec(format!(
            "selector '{sel}' picks a subgroup that is not normal"
        )));
    }
    Ok(vec![(sel.to_string(), n)])
}
