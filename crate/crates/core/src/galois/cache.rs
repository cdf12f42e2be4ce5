//! On-disk memo of exp tables, keyed by field spec, under `QCONV_CACHE_DIR`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::FieldSpec;

pub const CACHE_ENV: &str = "QCONV_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    spec: FieldSpec,
    generator: u32,
    /// `g^0, ..., g^{q-2}`.
    exp: Vec<u32>,
}

fn file_name(spec: &FieldSpec) -> String {
    let modulus: Vec<String> = spec.modulus.iter().map(u32::to_string).collect();
    format!("gf-{}-{}-{}.json", spec.p, spec.m, modulus.join("_"))
}

pub(super) fn dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// A cached `(generator, exp)` pair, if present and well formed. `check`
/// confirms `exp[i + 1] = exp[i] * generator` at sampled indices.
pub(super) fn load(dir: &Path, spec: &FieldSpec, check: impl Fn(u32, u32) -> u32) -> Option<(u32, Vec<u32>)> {
    let text = fs::read_to_string(dir.join(file_name(spec))).ok()?;
    let e: Entry = serde_json::from_str(&text).ok()?;
    let q = spec.order() as usize;
    if e.spec != *spec || e.exp.len() != q - 1 || e.exp.first() != Some(&1) {
        return None;
    }
    let mut seen = vec![false; q];
    for &x in &e.exp {
        if x == 0 || x as usize >= q || std::mem::replace(&mut seen[x as usize], true) {
            return None;
        }
    }
    let step = (e.exp.len() / 64).max(1);
    let ok = (0..e.exp.len())
        .step_by(step)
        .all(|i| check(e.exp[i], e.generator) == e.exp[(i + 1) % e.exp.len()]);
    ok.then_some((e.generator, e.exp))
}

/// Best effort: failures to write leave the cache untouched.
pub(super) fn store(dir: &Path, spec: &FieldSpec, generator: u32, exp: &[u32]) {
    let entry = Entry {
        spec: spec.clone(),
        generator,
        exp: exp.to_vec(),
    };
    let Ok(text) = serde_json::to_string(&entry) else { return };
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let target = dir.join(file_name(spec));
    let tmp = dir.join(format!("{}.{}.tmp", file_name(spec), std::process::id()));
    if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &target).is_err() {
        let _ = fs::remove_file(&tmp);
    }
}
