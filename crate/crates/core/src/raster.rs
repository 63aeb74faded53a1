//! `.psr` raster format.
//!
//! Layout: the 8-byte magic `POLSAR1\0`, a little-endian `u32` header
//! length, a UTF-8 JSON header
//! `{"width":W,"height":H,"looks":n,"layout":"d3o3","dtype":"f64le"}`, then
//! `W·H·9` little-endian `f64` values, row-major, each pixel stored as
//! `[|HH|², |HV|², |VV|², Re(HH·HV*), Im(HH·HV*), Re(HH·VV*), Im(HH·VV*),
//! Re(HV·VV*), Im(HV·VV*)]`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianCov3;
use crate::image::PolSarImage;

pub const MAGIC: &[u8; 8] = b"POLSAR1\0";
pub const LAYOUT: &str = "d3o3";
pub const DTYPE: &str = "f64le";
const VALUES_PER_PIXEL: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RasterHeader {
    pub width: usize,
    pub height: usize,
    pub looks: u32,
    pub layout: String,
    pub dtype: String,
}

impl RasterHeader {
    fn for_image(img: &PolSarImage) -> Self {
        Self {
            width: img.width(),
            height: img.height(),
            looks: img.looks(),
            layout: LAYOUT.to_string(),
            dtype: DTYPE.to_string(),
        }
    }
}

/// Serialize an image into `out`.
pub fn write_to<W: Write>(img: &PolSarImage, mut out: W) -> Result<()> {
    let header = serde_json::to_vec(&RasterHeader::for_image(img))?;
    let len = u32::try_from(header.len())
        .map_err(|_| Error::Parameter("raster header too large".into()))?;
    out.write_all(MAGIC)?;
    out.write_all(&len.to_le_bytes())?;
    out.write_all(&header)?;
    for p in img.pixels() {
        for v in p.to_array9() {
            out.write_all(&v.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parse an image from `input`. Errors carry the byte offset at which the
/// problem was detected.
pub fn read_from<R: Read>(mut input: R) -> Result<PolSarImage> {
    let mut offset = 0u64;
    let mut magic = [0u8; 8];
    read_exact_at(&mut input, &mut magic, &mut offset, "magic")?;
    if &magic != MAGIC {
        return Err(Error::format(0, "bad magic, expected POLSAR1\\0"));
    }
    let mut len = [0u8; 4];
    read_exact_at(&mut input, &mut len, &mut offset, "header length")?;
    let len = u32::from_le_bytes(len) as usize;
    let header_start = offset;
    let mut header = vec![0u8; len];
    read_exact_at(&mut input, &mut header, &mut offset, "header")?;
    let header: RasterHeader = serde_json::from_slice(&header)
        .map_err(|e| Error::format(header_start, format!("malformed header: {e}")))?;
    if header.layout != LAYOUT || header.dtype != DTYPE {
        return Err(Error::format(
            header_start,
            format!(
                "unsupported layout/dtype {}/{}",
                header.layout, header.dtype
            ),
        ));
    }
    if header.width == 0 || header.height == 0 || header.looks == 0 {
        return Err(Error::format(
            header_start,
            "width, height and looks must be positive",
        ));
    }
    let count = header
        .width
        .checked_mul(header.height)
        .ok_or_else(|| Error::format(header_start, "dimension overflow"))?;
    let mut pixels = Vec::with_capacity(count);
    let mut buf = [0u8; VALUES_PER_PIXEL * 8];
    for i in 0..count {
        let at = offset;
        read_exact_at(&mut input, &mut buf, &mut offset, "payload")
            .map_err(|_| Error::format(at, format!("truncated payload at pixel {i} of {count}")))?;
        let mut v = [0f64; VALUES_PER_PIXEL];
        for (k, chunk) in buf.chunks_exact(8).enumerate() {
            v[k] = f64::from_le_bytes(chunk.try_into().expect("8-byte chunk"));
        }
        let px = HermitianCov3::from_array9(v);
        px.validate()
            .map_err(|e| Error::format(at, format!("pixel {i}: {e}")))?;
        pixels.push(px);
    }
    let mut extra = [0u8; 1];
    if input.read(&mut extra)? != 0 {
        return Err(Error::format(
            offset,
            "payload longer than width*height*9 values",
        ));
    }
    PolSarImage::new(header.width, header.height, header.looks, pixels)
        .map_err(|e| Error::format(header_start, e.to_string()))
}

fn read_exact_at<R: Read>(
    input: &mut R,
    buf: &mut [u8],
    offset: &mut u64,
    what: &str,
) -> Result<()> {
    input.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::format(*offset, format!("unexpected end of file reading {what}"))
        } else {
            Error::Io(e)
        }
    })?;
    *offset += buf.len() as u64;
    Ok(())
}

pub fn to_bytes(img: &PolSarImage) -> Vec<u8> {
    let mut out = Vec::new();
    write_to(img, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn from_bytes(bytes: &[u8]) -> Result<PolSarImage> {
    read_from(bytes)
}

pub fn write_raster(img: &PolSarImage, path: impl AsRef<Path>) -> Result<()> {
    write_to(img, BufWriter::new(File::create(path)?))
}

pub fn read_raster(path: impl AsRef<Path>) -> Result<PolSarImage> {
    read_from(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header_len(bytes: &[u8]) -> usize {
        u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize
    }

    #[test]
    fn identity_pixel_layout() {
        let img = PolSarImage::filled(1, 1, 1, HermitianCov3::identity()).unwrap();
        let bytes = to_bytes(&img);
        assert_eq!(&bytes[..8], MAGIC);
        let hl = header_len(&bytes);
        let header = std::str::from_utf8(&bytes[12..12 + hl]).unwrap();
        assert_eq!(
            header,
            r#"{"width":1,"height":1,"looks":1,"layout":"d3o3","dtype":"f64le"}"#
        );
        let payload: Vec<f64> = bytes[12 + hl..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        assert_eq!(payload, vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let img = PolSarImage::filled(2, 2, 1, HermitianCov3::identity()).unwrap();
        let mut bytes = to_bytes(&img);
        let hl = header_len(&bytes);
        // Drop the last pixel: payload no longer covers width·height.
        bytes.truncate(12 + hl + 3 * 72);
        match from_bytes(&bytes) {
            Err(Error::Format { offset, .. }) => assert_eq!(offset as usize, 12 + hl + 3 * 72),
            other => panic!("expected format error, got {other:?}"),
        }
        assert!(PolSarImage::new(2, 2, 1, vec![HermitianCov3::identity(); 3]).is_err());
    }

    #[test]
    fn bad_magic_and_header() {
        assert!(matches!(
            from_bytes(b"NOTPSR\0\0\0\0\0\0"),
            Err(Error::Format { offset: 0, .. })
        ));
        let mut bytes = MAGIC.to_vec();
        bytes.extend_from_slice(&5u32.to_le_bytes());
        bytes.extend_from_slice(b"{oops");
        assert!(matches!(
            from_bytes(&bytes),
            Err(Error::Format { offset: 12, .. })
        ));
        let mut short = MAGIC.to_vec();
        short.extend_from_slice(&[1, 0]);
        assert!(matches!(
            from_bytes(&short),
            Err(Error::Format { offset: 8, .. })
        ));
    }

    #[test]
    fn trailing_bytes_rejected() {
        let img = PolSarImage::filled(1, 1, 1, HermitianCov3::identity()).unwrap();
        let mut bytes = to_bytes(&img);
        bytes.push(0);
        assert!(from_bytes(&bytes).is_err());
    }

    mod props {
        use super::*;
        use crate::hermitian::Complex;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip_is_lossless(w in 1usize..6, h in 1usize..6, looks in 1u32..5,
                                      vals in proptest::collection::vec(proptest::array::uniform9(-1e7..1e7f64), 36)) {
                let pixels: Vec<HermitianCov3> = (0..w * h)
                    .map(|i| {
                        let v = vals[i];
                        HermitianCov3 {
                            d: [v[0].abs(), v[1].abs(), v[2].abs()],
                            o: [Complex::new(v[3], v[4]), Complex::new(v[5], v[6]), Complex::new(v[7], v[8])],
                        }
                    })
                    .collect();
                let img = PolSarImage::new(w, h, looks, pixels).unwrap();
                let bytes = to_bytes(&img);
                let back = from_bytes(&bytes).unwrap();
                prop_assert_eq!(&back, &img);
                prop_assert_eq!(to_bytes(&back), bytes);
            }
        }
    }
}
