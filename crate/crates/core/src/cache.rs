//! On-disk cache of generator actions, as JSON sparse triplets.
//!
//! Files live at `<dir>/ak-n{n}-r{r}-{fingerprint}.json` and are written
//! atomically. Only the field domains are cached.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::hecke::{AlgebraContext, HeckeError, Parameters};
use crate::rings::{CyclotomicNumber, Rational, Scalar, ScalarDomain};

pub const CACHE_ENV: &str = "CYCLOHECKE_CACHE";
const FORMAT: &str = "cyclohecke-generator-actions";
const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache file is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// `(row, column, coefficient)`; the coefficient is one rational string for
/// `QQ` and the full coefficient vector for cyclotomic fields.
type Triplet = (usize, usize, Vec<String>);

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    n: usize,
    r: usize,
    domain: ScalarDomain,
    parameters: String,
    t_ops: Vec<Vec<Triplet>>,
    l_ops: Vec<Vec<Triplet>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Built,
    Bypassed,
}

#[derive(Clone, Debug)]
pub struct OpCache {
    dir: PathBuf,
}

impl OpCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        OpCache { dir: dir.into() }
    }

    /// `$CYCLOHECKE_CACHE` if set, else `fallback`.
    pub fn from_env_or(fallback: impl Into<PathBuf>) -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Self::new(dir),
            _ => Self::new(fallback),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, r: usize, params: &Parameters) -> PathBuf {
        self.dir.join(format!("ak-n{n}-r{r}-{}.json", params.fingerprint()))
    }

    /// Loads the context from disk, or builds and stores it.
    pub fn load_or_build(
        &self,
        n: usize,
        r: usize,
        params: Parameters,
    ) -> Result<(AlgebraContext, CacheOutcome), CacheError> {
        if !params.domain().is_field() {
            return Ok((AlgebraContext::new(n, r, params)?, CacheOutcome::Bypassed));
        }
        let path = self.path_for(n, r, &params);
        if path.exists() {
            if let Ok(ctx) = self.load(&path, n, r, &params) {
                return Ok((ctx, CacheOutcome::Hit));
            }
        }
        let ctx = AlgebraContext::new(n, r, params)?;
        self.store(&path, &ctx)?;
        Ok((ctx, CacheOutcome::Built))
    }

    fn load(&self, path: &Path, n: usize, r: usize, params: &Parameters) -> Result<AlgebraContext, CacheError> {
        let file: CacheFile = serde_json::from_slice(&fs::read(path)?).map_err(|e| CacheError::Malformed(e.to_string()))?;
        if file.format != FORMAT
            || file.version != VERSION
            || file.n != n
            || file.r != r
            || file.domain != params.domain()
            || file.parameters != params.describe()
        {
            return Err(CacheError::Malformed("header does not match".into()));
        }
        let dim = r.pow(n as u32) * (1..=n).product::<usize>();
        let decode = |ops: &[Vec<Triplet>]| -> Result<Vec<_>, CacheError> {
            ops.iter().map(|t| decode_op(t, dim, params.domain())).collect()
        };
        let t_ops = decode(&file.t_ops)?;
        let l_ops = decode(&file.l_ops)?;
        Ok(AlgebraContext::from_parts(n, r, params.clone(), t_ops, l_ops)?)
    }

    fn store(&self, path: &Path, ctx: &AlgebraContext) -> Result<(), CacheError> {
        let (t_ops, l_ops) = ctx.ops();
        let file = CacheFile {
            format: FORMAT.into(),
            version: VERSION,
            n: ctx.n(),
            r: ctx.r(),
            domain: ctx.domain(),
            parameters: ctx.params().describe(),
            t_ops: t_ops.iter().map(|op| encode_op(op)).collect(),
            l_ops: l_ops.iter().map(|op| encode_op(op)).collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&serde_json::to_vec(&file).map_err(|e| CacheError::Malformed(e.to_string()))?)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn encode_scalar(c: &Scalar) -> Vec<String> {
    match c {
        Scalar::Rat(r) => vec![r.to_string()],
        Scalar::Cyc(z) => z.coeffs().iter().map(|r| r.to_string()).collect(),
        Scalar::Frac(_) => unreachable!("fraction domains are not cached"),
    }
}

fn decode_scalar(s: &[String], domain: ScalarDomain) -> Result<Scalar, CacheError> {
    let parse = |x: &String| x.parse::<Rational>().map_err(|e| CacheError::Malformed(format!("{x}: {e}")));
    match domain {
        ScalarDomain::Rational if s.len() == 1 => Ok(Scalar::Rat(parse(&s[0])?)),
        ScalarDomain::Cyclotomic { order } => {
            let raw = s.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
            Ok(Scalar::Cyc(CyclotomicNumber::reduce(order, raw)))
        }
        _ => Err(CacheError::Malformed("coefficient does not fit the domain".into())),
    }
}

fn encode_op(op: &[Vec<(usize, Scalar)>]) -> Vec<Triplet> {
    op.iter()
        .enumerate()
        .flat_map(|(col, entries)| entries.iter().map(move |(row, c)| (*row, col, encode_scalar(c))))
        .collect()
}

fn decode_op(triplets: &[Triplet], dim: usize, domain: ScalarDomain) -> Result<Vec<Vec<(usize, Scalar)>>, CacheError> {
    let mut op = vec![Vec::new(); dim];
    for (row, col, c) in triplets {
        if *row >= dim || *col >= dim {
            return Err(CacheError::Malformed(format!("index ({row}, {col}) out of range")));
        }
        op[*col].push((*row, decode_scalar(c, domain)?));
    }
    Ok(op)
}
