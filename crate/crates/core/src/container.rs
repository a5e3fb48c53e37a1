//! Binary container for sampled wavefunctions and field sets, plus a JSON
//! form for small grids.
//!
//! Layout (all integers and floats little-endian):
//!
//! ```text
//! offset  size  field
//! 0       4     magic  b"GDC1"
//! 4       1     kind   0 = wavefunction (complex), 1 = real field set
//! 5       1     basis  0 = position, 1 = momentum, 255 = n/a
//! 6       1     rep    0 = galilei, 1 = dual, 255 = n/a
//! 7       1     reserved (0)
//! 8       8     rep parameter (mass or energy; 0 when n/a)   f64
//! 16      8     scaling constant c                            f64
//! 24      12    grid dims n0, n1, n2                          u32×3
//! 36      24    grid steps h0, h1, h2                         f64×3
//! 60      4     field count (1 for a wavefunction)            u32
//! 64      …     payload: wavefunction → n0·n1·n2 interleaved (re, im) f64;
//!               field set → field-count consecutive real f64 arrays
//! ```

use crate::error::{Error, Result};
use crate::grid::Grid3;
use crate::reps::{RepTag, WaveFunction, WfBasis};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

const MAGIC: [u8; 4] = *b"GDC1";
const KIND_WAVEFUNCTION: u8 = 0;
const KIND_FIELD_SET: u8 = 1;
const TAG_NA: u8 = 255;

/// Grids at or below this sample count may also be stored as JSON.
pub const JSON_GRID_LIMIT: usize = 32 * 32 * 32;

fn write_u32<W: Write>(w: &mut W, x: u32) -> Result<()> {
    w.write_all(&x.to_le_bytes())?;
    Ok(())
}

fn write_f64<W: Write>(w: &mut W, x: f64) -> Result<()> {
    w.write_all(&x.to_le_bytes())?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

struct Header {
    kind: u8,
    basis: u8,
    rep: u8,
    rep_param: f64,
    c: f64,
    grid: Grid3<f64>,
    field_count: u32,
}

fn write_header<W: Write>(w: &mut W, h: &Header) -> Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&[h.kind, h.basis, h.rep, 0])?;
    write_f64(w, h.rep_param)?;
    write_f64(w, h.c)?;
    for d in 0..3 {
        write_u32(w, h.grid.n[d] as u32)?;
    }
    for d in 0..3 {
        write_f64(w, h.grid.step[d])?;
    }
    write_u32(w, h.field_count)?;
    Ok(())
}

fn read_header<R: Read>(r: &mut R) -> Result<Header> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(Error::Container(format!("bad magic {magic:?}")));
    }
    let mut tags = [0u8; 4];
    r.read_exact(&mut tags)?;
    let rep_param = read_f64(r)?;
    let c = read_f64(r)?;
    let n = [read_u32(r)? as usize, read_u32(r)? as usize, read_u32(r)? as usize];
    let step = [read_f64(r)?, read_f64(r)?, read_f64(r)?];
    let field_count = read_u32(r)?;
    if n.iter().any(|&x| x == 0 || x > 1 << 16) {
        return Err(Error::Container(format!("implausible grid dims {n:?}")));
    }
    Ok(Header {
        kind: tags[0],
        basis: tags[1],
        rep: tags[2],
        rep_param,
        c,
        grid: Grid3 { n, step },
        field_count,
    })
}

pub fn write_wavefunction<W: Write>(w: &mut W, wf: &WaveFunction<f64>) -> Result<()> {
    let (rep, rep_param) = match wf.rep {
        RepTag::Galilei(m) => (0u8, m),
        RepTag::Dual(e) => (1u8, e),
    };
    write_header(
        w,
        &Header {
            kind: KIND_WAVEFUNCTION,
            basis: match wf.basis {
                WfBasis::Position => 0,
                WfBasis::Momentum => 1,
            },
            rep,
            rep_param,
            c: wf.c,
            grid: wf.grid,
            field_count: 1,
        },
    )?;
    for z in &wf.data {
        write_f64(w, z.re)?;
        write_f64(w, z.im)?;
    }
    Ok(())
}

pub fn read_wavefunction<R: Read>(r: &mut R) -> Result<WaveFunction<f64>> {
    let h = read_header(r)?;
    if h.kind != KIND_WAVEFUNCTION {
        return Err(Error::Container(format!("expected a wavefunction, found kind {}", h.kind)));
    }
    let basis = match h.basis {
        0 => WfBasis::Position,
        1 => WfBasis::Momentum,
        other => return Err(Error::Container(format!("unknown basis tag {other}"))),
    };
    let rep = match h.rep {
        0 => RepTag::Galilei(h.rep_param),
        1 => RepTag::Dual(h.rep_param),
        other => return Err(Error::Container(format!("unknown representation tag {other}"))),
    };
    let len = h.grid.len();
    let mut data = Vec::with_capacity(len);
    for _ in 0..len {
        let re = read_f64(r)?;
        let im = read_f64(r)?;
        data.push(Complex64::new(re, im));
    }
    Ok(WaveFunction { grid: h.grid, data, basis, rep, c: h.c })
}

/// A set of named real fields sharing one grid (the field/source/potential
/// container).
pub struct FieldSet {
    pub grid: Grid3<f64>,
    pub c: f64,
    pub fields: Vec<Vec<f64>>,
}

pub fn write_field_set<W: Write>(w: &mut W, set: &FieldSet) -> Result<()> {
    write_header(
        w,
        &Header {
            kind: KIND_FIELD_SET,
            basis: TAG_NA,
            rep: TAG_NA,
            rep_param: 0.0,
            c: set.c,
            grid: set.grid,
            field_count: set.fields.len() as u32,
        },
    )?;
    for field in &set.fields {
        if field.len() != set.grid.len() {
            return Err(Error::Container("field length does not match the grid".into()));
        }
        for &x in field {
            write_f64(w, x)?;
        }
    }
    Ok(())
}

pub fn read_field_set<R: Read>(r: &mut R) -> Result<FieldSet> {
    let h = read_header(r)?;
    if h.kind != KIND_FIELD_SET {
        return Err(Error::Container(format!("expected a field set, found kind {}", h.kind)));
    }
    let len = h.grid.len();
    let mut fields = Vec::with_capacity(h.field_count as usize);
    for _ in 0..h.field_count {
        let mut f = Vec::with_capacity(len);
        for _ in 0..len {
            f.push(read_f64(r)?);
        }
        fields.push(f);
    }
    Ok(FieldSet { grid: h.grid, c: h.c, fields })
}

/// JSON form for small grids.
#[derive(Serialize, Deserialize)]
pub struct WaveFunctionJson {
    pub basis: WfBasis,
    pub rep: RepTag<f64>,
    pub c: f64,
    pub n: [usize; 3],
    pub step: [f64; 3],
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

pub fn wavefunction_to_json(wf: &WaveFunction<f64>) -> Result<String> {
    if wf.grid.len() > JSON_GRID_LIMIT {
        return Err(Error::Container(format!(
            "JSON form is limited to {JSON_GRID_LIMIT} samples; use the binary container"
        )));
    }
    let doc = WaveFunctionJson {
        basis: wf.basis,
        rep: wf.rep,
        c: wf.c,
        n: wf.grid.n,
        step: wf.grid.step,
        re: wf.data.iter().map(|z| z.re).collect(),
        im: wf.data.iter().map(|z| z.im).collect(),
    };
    Ok(serde_json::to_string(&doc)?)
}

pub fn wavefunction_from_json(text: &str) -> Result<WaveFunction<f64>> {
    let doc: WaveFunctionJson = serde_json::from_str(text)?;
    if doc.re.len() != doc.im.len() || doc.re.len() != doc.n.iter().product::<usize>() {
        return Err(Error::Container("sample counts do not match the grid".into()));
    }
    Ok(WaveFunction {
        grid: Grid3 { n: doc.n, step: doc.step },
        data: doc.re.iter().zip(&doc.im).map(|(&re, &im)| Complex64::new(re, im)).collect(),
        basis: doc.basis,
        rep: doc.rep,
        c: doc.c,
    })
}
