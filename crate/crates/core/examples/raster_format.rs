//! Byte layout of the `.psr` raster format and its error reporting.

use polsar_gh::raster::{from_bytes, to_bytes};
use polsar_gh::{HermitianCov3, PolSarImage};

fn main() -> polsar_gh::Result<()> {
    let img = PolSarImage::filled(2, 1, 4, HermitianCov3::diagonal(1.0, 2.0, 3.0))?;
    let bytes = to_bytes(&img);
    let header_len = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes")) as usize;
    println!("magic  {:?}", std::str::from_utf8(&bytes[..8]).unwrap());
    println!(
        "header {}",
        std::str::from_utf8(&bytes[12..12 + header_len]).unwrap()
    );
    println!(
        "payload {} bytes = 2 pixels × 9 × 8",
        bytes.len() - 12 - header_len
    );
    assert_eq!(from_bytes(&bytes)?, img);

    let truncated = &bytes[..bytes.len() - 5];
    match from_bytes(truncated) {
        Err(e) => println!("truncated file: {e}"),
        Ok(_) => unreachable!("truncated payload must be rejected"),
    }
    Ok(())
}
