//! Binary field snapshots (`.nlsf`).
//!
//! Layout, all little-endian:
//!
//! ```text
//! offset  size      content
//! 0       4         magic "NLSF"
//! 4       1         version = 1
//! 5       1         dimension d
//! 6       4         N (u32)
//! 10      16·N^d    nodal values as (re: f64, im: f64), row-major
//! ```
//!
//! Values are always the physical (nodal) samples.

use std::io::{self, Read, Write};

use nls_core::{Field, Grid, Representation, SpectralTransform};
use num_complex::Complex64;

/// File magic.
pub const MAGIC: [u8; 4] = *b"NLSF";
/// Current format version.
pub const VERSION: u8 = 1;

/// Snapshot decode failures.
#[derive(Debug, thiserror::Error)]
pub enum SnapshotError {
    /// Underlying IO failure, including truncated payloads.
    #[error(transparent)]
    Io(#[from] io::Error),
    /// First four bytes were not `NLSF`.
    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),
    /// Unknown version byte.
    #[error("unsupported snapshot version {0}")]
    UnsupportedVersion(u8),
    /// Header describes an invalid grid.
    #[error("invalid grid in header: {0}")]
    Grid(#[from] nls_core::Error),
    /// Bytes left after the payload.
    #[error("trailing bytes after payload")]
    TrailingBytes,
}

/// Writes `field` (converted to nodal values) to `w`.
pub fn write_snapshot<W: Write, T: SpectralTransform + ?Sized>(
    mut w: W,
    field: &Field,
    transform: &T,
) -> io::Result<()> {
    let grid = *field.grid();
    let dim = u8::try_from(grid.dim())
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "dimension exceeds 255"))?;
    let n = u32::try_from(grid.n_per_axis())
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "N exceeds u32"))?;
    let physical;
    let values = if field.representation() == Representation::Physical {
        field.values()
    } else {
        physical = field.clone().to_physical(transform);
        physical.values()
    };
    let mut buf = Vec::with_capacity(10 + 16 * values.len());
    buf.extend_from_slice(&MAGIC);
    buf.push(VERSION);
    buf.push(dim);
    buf.extend_from_slice(&n.to_le_bytes());
    for v in values {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&buf)
}

/// Reads a snapshot; the field is returned in physical representation.
pub fn read_snapshot<R: Read>(mut r: R) -> Result<Field, SnapshotError> {
    let mut header = [0u8; 10];
    r.read_exact(&mut header)?;
    let magic: [u8; 4] = header[0..4].try_into().expect("4 bytes");
    if magic != MAGIC {
        return Err(SnapshotError::BadMagic(magic));
    }
    if header[4] != VERSION {
        return Err(SnapshotError::UnsupportedVersion(header[4]));
    }
    let dim = header[5] as usize;
    let n = u32::from_le_bytes(header[6..10].try_into().expect("4 bytes")) as usize;
    let grid = Grid::new(dim, n)?;
    let mut payload = vec![0u8; 16 * grid.total_points()];
    r.read_exact(&mut payload)?;
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(SnapshotError::TrailingBytes);
    }
    let values = payload
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().expect("8 bytes")),
                f64::from_le_bytes(c[8..16].try_into().expect("8 bytes")),
            )
        })
        .collect();
    Ok(Field::from_values(grid, Representation::Physical, values)?)
}
