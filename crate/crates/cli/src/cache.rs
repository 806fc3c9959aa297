//! On-disk cache of exact family tables, one JSON file per (kind, method).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use qlid_core::qfield::QBase;
use qlid_core::qpolys::{seed_cache, FamilyTable};

fn file_for(dir: &Path, table: &FamilyTable) -> PathBuf {
    dir.join(format!("{}-{}.json", table.kind.name(), table.method.name()))
}

/// Seed the in-process cache from every readable table in `dir`.
/// Unreadable files are reported and skipped.
pub fn load(dir: &Path) {
    let Ok(rd) = fs::read_dir(dir) else { return };
    let mut paths: Vec<_> = rd.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for p in paths.iter().filter(|p| p.extension().is_some_and(|e| e == "json")) {
        match fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|s| FamilyTable::from_json(&s).map_err(|e| e.to_string())) {
            Ok(t) if p == &file_for(dir, &t) => seed_cache(&t, QBase::Direct),
            Ok(_) => eprintln!("qlid: ignoring misnamed cache file {}", p.display()),
            Err(e) => eprintln!("qlid: ignoring cache file {}: {e}", p.display()),
        }
    }
}

/// Write `table` unless an equally long one is already stored.
pub fn store(dir: &Path, table: &FamilyTable) -> io::Result<()> {
    let path = file_for(dir, table);
    if let Ok(old) = fs::read_to_string(&path) {
        if FamilyTable::from_json(&old).is_ok_and(|t| t.up_to >= table.up_to) {
            return Ok(());
        }
    }
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, table.to_json())?;
    fs::rename(tmp, path)
}
