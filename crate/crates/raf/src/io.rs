//! On-disk artifact formats: atomic writes, CSV sample vectors, binary
//! point clouds with JSON sidecars, and PGM rasters.
//!
//! Binary point lists are little-endian `(re: f64, im: f64)` pairs; CSV
//! floats use Rust's shortest round-trip formatting, so identical runs
//! produce byte-identical files.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

use crate::pointprocess::EmpiricalSample;

/// Writes via a sibling temp file plus rename, so readers never observe
/// a partial artifact.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "artifact".into()),
        std::process::id()
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut body = serde_json::to_vec_pretty(value)?;
    body.push(b'\n');
    atomic_write(path, &body)
}

/// Little-endian f64 pairs, one per point.
pub fn complex_to_bytes(points: &[Complex64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(points.len() * 16);
    for p in points {
        out.extend_from_slice(&p.re.to_le_bytes());
        out.extend_from_slice(&p.im.to_le_bytes());
    }
    out
}

pub fn write_complex_binary(path: &Path, points: &[Complex64]) -> std::io::Result<()> {
    atomic_write(path, &complex_to_bytes(points))
}

pub fn read_complex_binary(path: &Path) -> std::io::Result<Vec<Complex64>> {
    let bytes = std::fs::read(path)?;
    if bytes.len() % 16 != 0 {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            "binary point file length is not a multiple of 16",
        ));
    }
    Ok(bytes
        .chunks_exact(16)
        .map(|chunk| {
            let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
            let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect())
}

/// One value per line with the metadata echoed as `#` comments.
pub fn sample_to_csv(sample: &EmpiricalSample) -> String {
    let m = &sample.metadata;
    let mut out = String::new();
    out.push_str(&format!("# ensemble: {}\n", m.ensemble));
    out.push_str(&format!("# kappa: {}\n", m.kappa));
    out.push_str(&format!("# u: {},{}\n", m.u[0], m.u[1]));
    out.push_str(&format!(
        "# phi: {:?} support_radius={} amplitude={}\n",
        m.phi.kind, m.phi.support_radius, m.phi.amplitude
    ));
    out.push_str(&format!("# trunc_degree: {}\n", m.trunc_degree));
    out.push_str(&format!("# master_seed: {}\n", m.master_seed));
    out.push_str(&format!("# n_samples: {}\n", m.n_samples));
    out.push_str(&format!("# rejected: {}\n", m.rejected));
    for v in &sample.values {
        out.push_str(&format!("{v}\n"));
    }
    out
}

pub fn write_sample_csv(path: &Path, sample: &EmpiricalSample) -> std::io::Result<()> {
    atomic_write(path, sample_to_csv(sample).as_bytes())
}

/// Outcome of the multiset symmetry checks recorded in root sidecars.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub conjugation: bool,
    pub negation: bool,
    pub inversion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation_by_i: Option<bool>,
    pub tolerance: f64,
}

/// Sidecar for a root-atlas binary dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootListSidecar {
    pub n: usize,
    pub alphabet: String,
    pub count: usize,
    pub symmetries_verified: SymmetryReport,
    pub holes: Vec<HoleMetric>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoleMetric {
    pub center: [f64; 2],
    pub exclusion_tol: f64,
    pub radius: f64,
}

/// Sidecar for a fractal value-set binary dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointCloudSidecar {
    pub z: [f64; 2],
    pub alphabet: String,
    pub depth: usize,
    pub count: usize,
    pub tail_radius: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointprocess::{RunMetadata, TestFunction};

    #[test]
    fn binary_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.bin");
        let pts = vec![
            Complex64::new(1.5, -2.25),
            Complex64::new(0.0, 3.75),
            Complex64::new(-1e-300, 1e300),
        ];
        write_complex_binary(&path, &pts).unwrap();
        assert_eq!(read_complex_binary(&path).unwrap(), pts);
    }

    #[test]
    fn csv_has_metadata_header_and_values() {
        let sample = EmpiricalSample {
            values: vec![0.0, 1.5, 0.25],
            metadata: RunMetadata {
                ensemble: "quaternary".into(),
                kappa: -1.0,
                u: [0.95, 0.0],
                phi: TestFunction::bump(0.5),
                trunc_degree: 982,
                master_seed: 42,
                n_samples: 3,
                rejected: 0,
            },
        };
        let csv = sample_to_csv(&sample);
        assert!(csv.contains("# ensemble: quaternary"));
        assert!(csv.contains("# master_seed: 42"));
        assert!(csv.ends_with("0\n1.5\n0.25\n"));
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        atomic_write(&path, b"one").unwrap();
        atomic_write(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        // No temp litter left behind.
        let names: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(names.len(), 1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn binary_encoding_round_trips(
                pts in proptest::collection::vec((-1e12f64..1e12, -1e12f64..1e12), 0..64)
            ) {
                let pts: Vec<Complex64> =
                    pts.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                let bytes = complex_to_bytes(&pts);
                prop_assert_eq!(bytes.len(), pts.len() * 16);
                let dir = tempfile::tempdir().unwrap();
                let path = dir.path().join("pts.bin");
                atomic_write(&path, &bytes).unwrap();
                prop_assert_eq!(read_complex_binary(&path).unwrap(), pts);
            }
        }
    }
}
