//! Binary PPM (P6) decoding/encoding and directory-per-class ingestion.
//!
//! P6 with maxval 255 is the one image format this crate reads: it decodes
//! with no third-party codecs. Convert JPEG or PNG inputs up front with any
//! standard tool (e.g. ImageMagick's `convert in.jpg out.ppm`).

use std::path::Path;
use std::sync::Arc;

use crate::dataset::{ClassLabel, ClassRegistry};
use crate::error::{Error, Result};
use crate::image::Image;

fn ppm_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Ppm { path: path.to_path_buf(), message: message.into() }
}

/// Decode a binary PPM (P6, maxval 255) byte buffer.
pub fn decode_ppm(bytes: &[u8], path: &Path) -> Result<Image> {
    let mut pos = 0usize;

    // Header tokens are separated by whitespace; `#` starts a comment that
    // runs to end of line.
    let next_token = |pos: &mut usize| -> Result<String> {
        loop {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < bytes.len() && bytes[*pos] == b'#' {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
                continue;
            }
            break;
        }
        let start = *pos;
        while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if start == *pos {
            return Err(ppm_error(path, "truncated header"));
        }
        Ok(String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
    };

    let magic = next_token(&mut pos)?;
    if magic != "P6" {
        return Err(ppm_error(path, format!("expected magic P6, found '{magic}'")));
    }
    let width: usize = next_token(&mut pos)?
        .parse()
        .map_err(|_| ppm_error(path, "invalid width"))?;
    let height: usize = next_token(&mut pos)?
        .parse()
        .map_err(|_| ppm_error(path, "invalid height"))?;
    let maxval: usize = next_token(&mut pos)?
        .parse()
        .map_err(|_| ppm_error(path, "invalid maxval"))?;
    if maxval != 255 {
        return Err(ppm_error(path, format!("unsupported maxval {maxval}, expected 255")));
    }
    if width == 0 || height == 0 {
        return Err(ppm_error(path, "image dimensions must be positive"));
    }

    // Exactly one whitespace byte separates the header from pixel data.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(ppm_error(path, "missing separator after maxval"));
    }
    pos += 1;

    let needed = width * height * 3;
    let available = bytes.len() - pos;
    if available < needed {
        return Err(ppm_error(
            path,
            format!("truncated pixel data: {available} bytes, expected {needed} for {width}x{height}"),
        ));
    }
    Image::new(width, height, bytes[pos..pos + needed].to_vec())
}

/// Read and decode one P6 file.
pub fn load_ppm(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes =
        std::fs::read(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    decode_ppm(&bytes, path)
}

/// Encode an image as binary PPM (P6, maxval 255).
pub fn encode_ppm(img: &Image) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn save_ppm(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_ppm(img))
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Decoded images paired with their class labels, plus the registry built
/// from the class subdirectory names.
pub type LabeledImages = (Vec<(Image, ClassLabel)>, Arc<ClassRegistry>);

/// Load a directory-per-class image dataset: `<root>/<class_name>/*.ppm`.
///
/// Class names are the subdirectory names sorted lexicographically; files
/// within a class are read in lexicographic filename order. Returns the
/// decoded images with their labels, plus the class registry.
pub fn load_image_dir(root: impl AsRef<Path>) -> Result<LabeledImages> {
    let root = root.as_ref();
    let entries = std::fs::read_dir(root)
        .map_err(|source| Error::Io { path: root.to_path_buf(), source })?;

    let mut class_dirs: Vec<(String, std::path::PathBuf)> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| Error::Io { path: root.to_path_buf(), source })?;
        let path = entry.path();
        if path.is_dir() {
            let name = entry.file_name().to_string_lossy().into_owned();
            class_dirs.push((name, path));
        }
    }
    if class_dirs.is_empty() {
        return Err(Error::ImageDir {
            path: root.to_path_buf(),
            message: "no class subdirectories found".into(),
        });
    }
    class_dirs.sort_by(|a, b| a.0.cmp(&b.0));

    let registry = Arc::new(ClassRegistry::new(
        class_dirs.iter().map(|(name, _)| name.clone()).collect(),
    )?);

    let mut samples = Vec::new();
    for (index, (_, dir)) in class_dirs.iter().enumerate() {
        let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)
            .map_err(|source| Error::Io { path: dir.clone(), source })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "ppm"))
            .collect();
        if files.is_empty() {
            return Err(Error::ImageDir {
                path: dir.clone(),
                message: "class directory contains no .ppm files".into(),
            });
        }
        files.sort();
        for file in files {
            samples.push((load_ppm(&file)?, ClassLabel::new(index)));
        }
    }
    Ok((samples, registry))
}
