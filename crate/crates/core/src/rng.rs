//! Counter-based random numbers (Philox4x32-10).
//!
//! Every draw is a pure function of `(key, counter)`, so a path's normals can
//! be produced in any order, on any thread, and still come out identical.

const PHILOX_M0: u32 = 0xD251_1F53;
const PHILOX_M1: u32 = 0xCD9E_8D57;
const PHILOX_W0: u32 = 0x9E37_79B9;
const PHILOX_W1: u32 = 0xBB67_AE85;

#[inline(always)]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

#[inline(always)]
fn round(ctr: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let (hi0, lo0) = mulhilo(PHILOX_M0, ctr[0]);
    let (hi1, lo1) = mulhilo(PHILOX_M1, ctr[2]);
    [hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0]
}

/// Philox4x32 with 10 rounds.
pub fn philox4x32(mut ctr: [u32; 4], mut key: [u32; 2]) -> [u32; 4] {
    for i in 0..10 {
        if i > 0 {
            key[0] = key[0].wrapping_add(PHILOX_W0);
            key[1] = key[1].wrapping_add(PHILOX_W1);
        }
        ctr = round(ctr, key);
    }
    ctr
}

/// Stream of standard normals for one path, addressed by step index.
#[derive(Debug, Clone, Copy)]
pub struct NormalStream {
    key: [u32; 2],
    path: u64,
}

impl NormalStream {
    pub fn new(master_seed: u64, path_index: u64) -> Self {
        Self {
            key: [master_seed as u32, (master_seed >> 32) as u32],
            path: path_index,
        }
    }

    /// Two uniforms in the open interval (0, 1) for the given step.
    #[inline]
    pub fn uniforms(&self, step: u64) -> (f64, f64) {
        let out = philox4x32(
            [
                self.path as u32,
                (self.path >> 32) as u32,
                step as u32,
                (step >> 32) as u32,
            ],
            self.key,
        );
        let a = (u64::from(out[0]) << 32) | u64::from(out[1]);
        let b = (u64::from(out[2]) << 32) | u64::from(out[3]);
        (open_unit(a), open_unit(b))
    }

    /// Standard normal draw Z_k via Box-Muller on the step's counter block.
    #[inline]
    pub fn normal(&self, step: u64) -> f64 {
        let (u1, u2) = self.uniforms(step);
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// Maps 52 random bits to (0, 1), never hitting either endpoint.
#[inline]
fn open_unit(bits: u64) -> f64 {
    ((bits >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}
