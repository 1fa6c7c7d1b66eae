//! RGB images and the preprocessing primitives applied to them.

use crate::error::{Error, Result};

/// An 8-bit RGB image, row-major, 3 bytes per pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

/// Deterministic augmentation operations.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AugmentOp {
    /// Mirror columns.
    HFlip,
    /// Rotate 90 degrees clockwise.
    Rot90,
    /// Rotate 180 degrees.
    Rot180,
    /// Rotate 270 degrees clockwise.
    Rot270,
}

impl AugmentOp {
    pub const ALL: [AugmentOp; 4] = [AugmentOp::HFlip, AugmentOp::Rot90, AugmentOp::Rot180, AugmentOp::Rot270];
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter("image dimensions must be positive".into()));
        }
        if pixels.len() != width * height * 3 {
            return Err(Error::InvalidParameter(format!(
                "pixel buffer has {} bytes, expected {} for {width}x{height} RGB",
                pixels.len(),
                width * height * 3
            )));
        }
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// RGB triple at (row, col).
    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        let off = (row * self.width + col) * 3;
        [self.pixels[off], self.pixels[off + 1], self.pixels[off + 2]]
    }
}

/// Nearest-neighbor resize to exactly `w` x `h`.
///
/// Destination pixel (r, c) copies source pixel
/// (floor(r * src_h / h), floor(c * src_w / w)).
pub fn resize(img: &Image, w: usize, h: usize) -> Result<Image> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidParameter("resize target must be positive".into()));
    }
    let mut pixels = Vec::with_capacity(w * h * 3);
    for r in 0..h {
        let sr = (r as u64 * img.height as u64 / h as u64) as usize;
        for c in 0..w {
            let sc = (c as u64 * img.width as u64 / w as u64) as usize;
            let off = (sr * img.width + sc) * 3;
            pixels.extend_from_slice(&img.pixels[off..off + 3]);
        }
    }
    Image::new(w, h, pixels)
}

/// Apply one augmentation op.
///
/// Rotations are exact right-angle rotations; `Rot90` sends source pixel
/// (r, c) to destination (c, rows-1-r), so 90 and 270 swap dimensions.
pub fn augment(img: &Image, op: AugmentOp) -> Image {
    let (w, h) = (img.width, img.height);
    let (ow, oh) = match op {
        AugmentOp::HFlip | AugmentOp::Rot180 => (w, h),
        AugmentOp::Rot90 | AugmentOp::Rot270 => (h, w),
    };
    let mut pixels = vec![0u8; img.pixels.len()];
    for r in 0..oh {
        for c in 0..ow {
            let (sr, sc) = match op {
                AugmentOp::HFlip => (r, w - 1 - c),
                AugmentOp::Rot90 => (h - 1 - c, r),
                AugmentOp::Rot180 => (h - 1 - r, w - 1 - c),
                AugmentOp::Rot270 => (c, w - 1 - r),
            };
            let src = (sr * w + sc) * 3;
            let dst = (r * ow + c) * 3;
            pixels[dst..dst + 3].copy_from_slice(&img.pixels[src..src + 3]);
        }
    }
    Image { width: ow, height: oh, pixels }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2x3 test image (h=2 rows, w=3 cols) with distinct per-pixel values.
    fn grid_2x3() -> Image {
        // pixel value = 10*row + col, replicated across channels
        let mut px = Vec::new();
        for r in 0..2u8 {
            for c in 0..3u8 {
                let v = 10 * r + c;
                px.extend_from_slice(&[v, v, v]);
            }
        }
        Image::new(3, 2, px).unwrap()
    }

    #[test]
    fn buffer_length_is_checked() {
        assert!(Image::new(2, 2, vec![0; 11]).is_err());
        assert!(Image::new(2, 2, vec![0; 12]).is_ok());
        assert!(Image::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn resize_identity_dimensions_is_pixel_identical() {
        let img = grid_2x3();
        let same = resize(&img, 3, 2).unwrap();
        assert_eq!(img, same);
    }

    #[test]
    fn resize_2x2_to_4x4_replicates_blocks() {
        // 2x2 image, 4 distinct colors
        let img = Image::new(2, 2, vec![
            1, 1, 1, 2, 2, 2, //
            3, 3, 3, 4, 4, 4,
        ])
        .unwrap();
        let out = resize(&img, 4, 4).unwrap();
        // hand-evaluated floor(dst*2/4) index map: 0,0,1,1 in both axes
        let expect = [
            [1, 1, 2, 2],
            [1, 1, 2, 2],
            [3, 3, 4, 4],
            [3, 3, 4, 4],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (c, want) in row.iter().enumerate() {
                assert_eq!(out.pixel(r, c)[0], *want, "at ({r},{c})");
            }
        }
    }

    #[test]
    fn resize_shrinks_to_requested_dimensions() {
        let img = Image::new(1080, 1080, vec![7; 1080 * 1080 * 3]).unwrap();
        let out = resize(&img, 240, 240).unwrap();
        assert_eq!((out.width(), out.height()), (240, 240));
    }

    #[test]
    fn resize_is_idempotent_at_fixed_target() {
        let img = grid_2x3();
        let once = resize(&img, 2, 5).unwrap();
        let twice = resize(&once, 2, 5).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn hflip_is_an_involution() {
        let img = grid_2x3();
        let back = augment(&augment(&img, AugmentOp::HFlip), AugmentOp::HFlip);
        assert_eq!(img, back);
    }

    #[test]
    fn rot90_four_times_is_identity() {
        let img = grid_2x3();
        let mut cur = img.clone();
        for _ in 0..4 {
            cur = augment(&cur, AugmentOp::Rot90);
        }
        assert_eq!(img, cur);
    }

    #[test]
    fn rot180_equals_rot90_twice_and_rot270_thrice() {
        let img = grid_2x3();
        let r90 = augment(&img, AugmentOp::Rot90);
        assert_eq!(augment(&img, AugmentOp::Rot180), augment(&r90, AugmentOp::Rot90));
        let r180 = augment(&img, AugmentOp::Rot180);
        assert_eq!(augment(&img, AugmentOp::Rot270), augment(&r180, AugmentOp::Rot90));
    }

    #[test]
    fn rot90_of_2x3_maps_every_pixel() {
        // source (r,c) -> destination (c, rows-1-r); enumerate all 6 pixels
        let img = grid_2x3();
        let out = augment(&img, AugmentOp::Rot90);
        assert_eq!((out.width(), out.height()), (2, 3));
        for r in 0..2usize {
            for c in 0..3usize {
                let v = (10 * r + c) as u8;
                assert_eq!(out.pixel(c, 2 - 1 - r)[0], v, "source ({r},{c})");
            }
        }
    }

    #[test]
    fn hflip_mirrors_columns() {
        let img = grid_2x3();
        let out = augment(&img, AugmentOp::HFlip);
        assert_eq!(out.pixel(0, 0)[0], 2);
        assert_eq!(out.pixel(0, 2)[0], 0);
        assert_eq!(out.pixel(1, 1)[0], 11);
    }
}
