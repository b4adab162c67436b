//! Best-known search results, persisted as JSON lines.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::search::SearchRecord;

#[derive(Clone, Debug, Default)]
pub struct RecordsStore {
    path: Option<PathBuf>,
    records: BTreeMap<(usize, usize, usize), SearchRecord>,
}

impl RecordsStore {
    /// An empty store with no backing file.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path`; a missing file gives an empty store bound to that path.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut store = Self {
            path: Some(path.clone()),
            records: BTreeMap::new(),
        };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(store),
            Err(e) => return Err(e.into()),
        };
        store.load_str(&text)?;
        Ok(store)
    }

    fn load_str(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let rec: SearchRecord = serde_json::from_str(line).map_err(|e| Error::RecordsLine {
                line: line_no,
                reason: e.to_string(),
            })?;
            let d = rec.density_value().map_err(|e| Error::RecordsLine {
                line: line_no,
                reason: e.to_string(),
            })?;
            let zero = num_rational::BigRational::from_integer(0.into());
            let one = num_rational::BigRational::from_integer(1.into());
            if d < zero || d > one {
                return Err(Error::RecordsLine {
                    line: line_no,
                    reason: format!("density {} outside [0, 1]", rec.density),
                });
            }
            let g = rec.graph().map_err(|e| Error::RecordsLine {
                line: line_no,
                reason: e.to_string(),
            })?;
            if g.n() != rec.n || g.m() != rec.edges {
                return Err(Error::RecordsLine {
                    line: line_no,
                    reason: "graph does not match n / edges".into(),
                });
            }
            self.insert(rec)?;
        }
        Ok(())
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, n: usize, k: usize, l: usize) -> Option<&SearchRecord> {
        self.records.get(&(n, k, l))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SearchRecord> {
        self.records.values()
    }

    /// Stores `rec` if its key is new, its density is strictly higher, or the
    /// density ties with fewer edges. Returns whether the store changed.
    pub fn insert(&mut self, rec: SearchRecord) -> Result<bool> {
        let key = (rec.n, rec.k, rec.l);
        let replace = match self.records.get(&key) {
            None => true,
            Some(old) => {
                let (a, b) = (rec.density_value()?, old.density_value()?);
                a > b || (a == b && rec.edges < old.edges)
            }
        };
        if replace {
            self.records.insert(key, rec);
        }
        Ok(replace)
    }

    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for r in self.records.values() {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        Ok(out)
    }

    /// Writes the store to its file through a temporary sibling and a rename.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_json_lines()?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
