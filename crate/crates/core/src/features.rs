//! Image-to-vector feature extraction.
//!
//! Two extractors, both cheap and fully deterministic:
//!
//! * [`FeatureExtractor::Histogram24`] — an 8-bin intensity histogram per
//!   RGB channel (bin width 32), each channel normalized to sum to 1, laid
//!   out R then G then B. 24 dimensions, invariant to spatial layout.
//! * [`FeatureExtractor::Downsample192`] — nearest-neighbor resize to 8×8,
//!   pixels scaled into [0,1], flattened row-major with RGB interleaved.
//!   192 dimensions, keeps coarse spatial structure.

use crate::dataset::{ClassLabel, Dataset, FeatureVector};
use crate::error::Result;
use crate::image::Image;
use std::sync::Arc;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FeatureExtractor {
    Histogram24,
    Downsample192,
}

impl FeatureExtractor {
    /// Output dimension of this extractor.
    pub fn dim(&self) -> usize {
        match self {
            FeatureExtractor::Histogram24 => 24,
            FeatureExtractor::Downsample192 => 192,
        }
    }

    /// Name accepted in configs (`"histogram24"` / `"downsample192"`).
    pub fn name(&self) -> &'static str {
        match self {
            FeatureExtractor::Histogram24 => "histogram24",
            FeatureExtractor::Downsample192 => "downsample192",
        }
    }

    pub fn extract(&self, image: &Image) -> Vec<f64> {
        match self {
            FeatureExtractor::Histogram24 => histogram24(image),
            FeatureExtractor::Downsample192 => downsample192(image),
        }
    }
}

fn histogram24(image: &Image) -> Vec<f64> {
    // counts[channel][bin]; bin = value / 32 so 0..=255 maps onto 0..=7
    let mut counts = [[0u64; 8]; 3];
    for px in image.pixels().chunks_exact(3) {
        for (ch, &v) in px.iter().enumerate() {
            counts[ch][(v / 32) as usize] += 1;
        }
    }
    let total = (image.width() * image.height()) as f64;
    let mut out = Vec::with_capacity(24);
    for ch in counts {
        for bin in ch {
            out.push(bin as f64 / total);
        }
    }
    out
}

fn downsample192(image: &Image) -> Vec<f64> {
    // resize only fails on a zero target dimension
    let small = crate::image::resize(image, 8, 8).expect("8x8 is a valid resize target");
    small.pixels().iter().map(|&v| v as f64 / 255.0).collect()
}

/// Run one extractor over a labeled image collection.
pub fn extract_dataset(
    images: &[(Image, ClassLabel)],
    registry: Arc<crate::dataset::ClassRegistry>,
    extractor: FeatureExtractor,
) -> Result<Dataset> {
    let mut rows = Vec::with_capacity(images.len());
    let mut labels = Vec::with_capacity(images.len());
    for (img, label) in images {
        rows.push(FeatureVector::new(extractor.extract(img))?.into_values());
        labels.push(*label);
    }
    Dataset::from_rows(rows, labels, registry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::ClassRegistry;

    fn solid(w: usize, h: usize, rgb: [u8; 3]) -> Image {
        let pixels: Vec<u8> = (0..w * h).flat_map(|_| rgb).collect();
        Image::new(w, h, pixels).unwrap()
    }

    #[test]
    fn histogram_of_solid_image_is_one_hot_per_channel() {
        // r=0 -> bin 0, g=100 -> bin 3, b=255 -> bin 7
        let img = solid(4, 2, [0, 100, 255]);
        let f = FeatureExtractor::Histogram24.extract(&img);
        assert_eq!(f.len(), 24);
        let mut expected = vec![0.0; 24];
        expected[0] = 1.0;
        expected[8 + 3] = 1.0;
        expected[16 + 7] = 1.0;
        assert_eq!(f, expected);
    }

    #[test]
    fn histogram_channels_each_sum_to_one() {
        let pixels: Vec<u8> = (0..6 * 5 * 3).map(|i| (i * 37 % 256) as u8).collect();
        let img = Image::new(6, 5, pixels).unwrap();
        let f = FeatureExtractor::Histogram24.extract(&img);
        for ch in 0..3 {
            let s: f64 = f[ch * 8..(ch + 1) * 8].iter().sum();
            assert!((s - 1.0).abs() < 1e-12, "channel {ch} sums to {s}");
        }
    }

    #[test]
    fn histogram_bin_edges_use_width_32() {
        // red values 31, 32, 63, 64 land in bins 0, 1, 1, 2
        let pixels = vec![31, 0, 0, 32, 0, 0, 63, 0, 0, 64, 0, 0];
        let img = Image::new(2, 2, pixels).unwrap();
        let f = FeatureExtractor::Histogram24.extract(&img);
        assert_eq!(&f[0..4], &[0.25, 0.5, 0.25, 0.0]);
        assert!(f[4..8].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn histogram_ignores_spatial_layout() {
        let a = Image::new(2, 1, vec![10, 20, 30, 200, 210, 220]).unwrap();
        let b = Image::new(2, 1, vec![200, 210, 220, 10, 20, 30]).unwrap();
        let fa = FeatureExtractor::Histogram24.extract(&a);
        let fb = FeatureExtractor::Histogram24.extract(&b);
        assert_eq!(fa, fb);
    }

    #[test]
    fn downsample_dim_and_range() {
        let pixels: Vec<u8> = (0..32 * 16 * 3).map(|i| (i % 256) as u8).collect();
        let img = Image::new(32, 16, pixels).unwrap();
        let f = FeatureExtractor::Downsample192.extract(&img);
        assert_eq!(f.len(), 192);
        assert!(f.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn downsample_of_8x8_is_exact_scaling() {
        let pixels: Vec<u8> = (0..8 * 8 * 3).map(|i| (i % 256) as u8).collect();
        let img = Image::new(8, 8, pixels.clone()).unwrap();
        let f = FeatureExtractor::Downsample192.extract(&img);
        let expected: Vec<f64> = pixels.iter().map(|&v| v as f64 / 255.0).collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn downsample_solid_image_is_constant_vector() {
        let img = solid(100, 60, [255, 0, 128]);
        let f = FeatureExtractor::Downsample192.extract(&img);
        for px in f.chunks_exact(3) {
            assert_eq!(px[0], 1.0);
            assert_eq!(px[1], 0.0);
            assert_eq!(px[2], 128.0 / 255.0);
        }
    }

    #[test]
    fn extract_dataset_has_matching_dims_and_labels() {
        let registry = Arc::new(ClassRegistry::new(vec!["a".into(), "b".into()]).unwrap());
        let images = vec![
            (solid(3, 3, [0, 0, 0]), ClassLabel::new(0)),
            (solid(5, 2, [255, 255, 255]), ClassLabel::new(1)),
        ];
        for (ex, d) in [(FeatureExtractor::Histogram24, 24), (FeatureExtractor::Downsample192, 192)] {
            let ds = extract_dataset(&images, registry.clone(), ex).unwrap();
            assert_eq!(ds.len(), 2);
            assert_eq!(ds.dim(), d);
            assert_eq!(ds.label(0), ClassLabel::new(0));
            assert_eq!(ds.label(1), ClassLabel::new(1));
        }
    }
}
