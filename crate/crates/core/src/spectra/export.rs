use std::fmt::Write;

use crate::spectra::{NBSpectrum, RealSpectrum};

fn header(out: &mut String, metadata: &[(String, String)]) {
    for (k, v) in metadata {
        let _ = writeln!(out, "# {k}={v}");
    }
}

/// Adjacency eigenvalues as CSV with a single `value` column. Metadata
/// lines start with `#`.
pub fn adjacency_csv(spec: &RealSpectrum, metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    header(&mut out, metadata);
    let _ = writeln!(out, "# leading={}", spec.leading());
    let _ = writeln!(out, "# eta={}", spec.eta);
    let _ = writeln!(out, "# rank={}", spec.rank_r);
    out.push_str("value\n");
    for v in &spec.values {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// Non-backtracking eigenvalues as CSV with columns `re,im,category`, and
/// the bulk circle radius `((d1-1)(d2-1))^{1/4}` as metadata.
pub fn nonbacktracking_csv(nb: &NBSpectrum, metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    header(&mut out, metadata);
    let _ = writeln!(out, "# circle_radius={}", nb.circle_radius());
    let _ = writeln!(out, "# perron={}", nb.perron());
    out.push_str("re,im,category\n");
    for e in &nb.entries {
        let _ = writeln!(out, "{},{},{}", e.re, e.im, e.category.label());
    }
    out
}

/// Read a `# key=value` metadata entry back from an exported CSV.
pub fn csv_metadata(text: &str, key: &str) -> Option<String> {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| l.trim_start_matches('#').trim().split_once('='))
        .find(|(k, _)| *k == key)
        .map(|(_, v)| v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::BipartiteGraph;
    use crate::spectra::{adjacency_spectrum, spectrum_b_from_a};

    #[test]
    fn k23_export() {
        let spec = adjacency_spectrum(&BipartiteGraph::complete(2, 3)).unwrap();
        let nb = spectrum_b_from_a(&spec, 3, 2).unwrap();
        let meta = vec![("seed".to_string(), "7".to_string())];
        let a = adjacency_csv(&spec, &meta);
        assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 6);
        assert_eq!(csv_metadata(&a, "seed").as_deref(), Some("7"));
        let b = nonbacktracking_csv(&nb, &meta);
        assert_eq!(b.lines().filter(|l| !l.starts_with('#')).count(), 13);
        let r: f64 = csv_metadata(&b, "circle_radius").unwrap().parse().unwrap();
        assert!((r - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(b.contains("\n1,0,trivial\n"));
    }
}
