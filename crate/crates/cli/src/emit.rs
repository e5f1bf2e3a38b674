//! CSV renderings of distance matrices, bound curves, and point clouds.
//! All emitters are plain string builders so output is bytewise stable.

use paramcodes_core::bounds::BoundCurves;
use paramcodes_core::ensemble::{PointCloud, Provenance, SrceSample};
use paramcodes_core::metrics::DistanceMatrix;
use serde::{Deserialize, Serialize};

use crate::report::word_string;

/// Distance matrix as CSV, labels on both the header row and the first
/// column. `relative` switches the entries from counts to exact fractions.
pub fn matrix_csv(matrix: &DistanceMatrix, relative: bool) -> String {
    let mut out = String::from("language");
    for label in &matrix.labels {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    for (i, label) in matrix.labels.iter().enumerate() {
        out.push_str(label);
        for j in 0..matrix.labels.len() {
            out.push(',');
            if relative {
                out.push_str(&matrix.relative[i][j].to_string());
            } else {
                out.push_str(&matrix.absolute[i][j].to_string());
            }
        }
        out.push('\n');
    }
    out
}

/// Bound curves as CSV: delta plus the three rate curves, and a 0/1 column
/// marking where the Plotkin condition forces rate zero.
pub fn curves_csv(curves: &BoundCurves) -> String {
    let mut out = String::from("delta,gv,hamming,singleton,plotkin\n");
    for s in &curves.samples {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.delta,
            s.gv,
            s.hamming,
            s.singleton,
            u8::from(s.plotkin_zero)
        ));
    }
    out
}

fn provenance_token(p: Provenance) -> &'static str {
    match p {
        Provenance::Enumerated => "enumerated",
        Provenance::Sampled => "sampled",
    }
}

/// Point cloud as CSV for overlaying on the curves: delta both as an exact
/// fraction and as a decimal for plotting.
pub fn cloud_csv(cloud: &PointCloud) -> String {
    let mut out = String::from("delta,delta_decimal,rate,multiplicity,provenance\n");
    for p in &cloud.points {
        let decimal = *p.relative_distance.numer() as f64 / *p.relative_distance.denom() as f64;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.relative_distance,
            decimal,
            p.rate,
            p.multiplicity,
            provenance_token(p.provenance)
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudPointJson {
    pub delta: String,
    pub delta_decimal: f64,
    pub rate: f64,
    pub multiplicity: u64,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudJson {
    pub schema_version: u32,
    pub alphabet: u32,
    pub block_length: usize,
    pub word_count: usize,
    pub points: Vec<CloudPointJson>,
}

pub fn cloud_json(cloud: &PointCloud) -> CloudJson {
    CloudJson {
        schema_version: crate::report::SCHEMA_VERSION,
        alphabet: cloud.alphabet.size(),
        block_length: cloud.block_length,
        word_count: cloud.word_count,
        points: cloud
            .points
            .iter()
            .map(|p| CloudPointJson {
                delta: p.relative_distance.to_string(),
                delta_decimal: *p.relative_distance.numer() as f64
                    / *p.relative_distance.denom() as f64,
                rate: p.rate,
                multiplicity: p.multiplicity,
                provenance: provenance_token(p.provenance).to_owned(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub trial: usize,
    pub words: Vec<String>,
    pub min_distance: usize,
    pub relative_distance: String,
    pub dimension: f64,
    pub rate: f64,
    pub redraws: u64,
}

pub fn samples_json(samples: &[SrceSample]) -> Vec<SampleJson> {
    samples
        .iter()
        .enumerate()
        .map(|(trial, s)| SampleJson {
            trial,
            words: s
                .code
                .words()
                .iter()
                .map(|w| word_string(&w.letters))
                .collect(),
            min_distance: s.parameters.min_distance,
            relative_distance: s.parameters.relative_distance.to_string(),
            dimension: s.parameters.dimension,
            rate: s.parameters.rate,
            redraws: s.redraws,
        })
        .collect()
}
