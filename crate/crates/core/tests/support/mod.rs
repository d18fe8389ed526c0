//! Independent oracles shared by the integration suites. Nothing here calls
//! into the implementation paths it is used to check.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Right-hand side of the plant written out directly from the ODE.
fn plant_rhs(t: f64, z: [f64; 2], u1: f64, u2: f64) -> [f64; 2] {
    let forcing = t.sin() * u1.powi(2) + t.cos() * u2.powi(2) + t.sin() * u1 * u2;
    [
        z[1],
        forcing - z[0].sin() * z[1] - t.sin() * z[0].cos() * z[0].powi(3),
    ]
}

/// Adaptive Dormand-Prince 5(4) integration of the plant over [0, 1].
pub fn plant_oracle(u1: f64, u2: f64, tol: f64) -> f64 {
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let (mut t, mut z, mut h) = (0.0f64, [2.0f64, 2.0f64], 1e-3f64);
    while t < 1.0 {
        if t + h > 1.0 {
            h = 1.0 - t;
        }
        let mut k = [[0.0; 2]; 7];
        for s in 0..7 {
            let mut zs = z;
            for (j, kj) in k.iter().enumerate().take(s) {
                zs[0] += h * A[s][j] * kj[0];
                zs[1] += h * A[s][j] * kj[1];
            }
            k[s] = plant_rhs(t + C[s] * h, zs, u1, u2);
        }
        let mut z5 = z;
        let mut z4 = z;
        for s in 0..7 {
            for d in 0..2 {
                z5[d] += h * B5[s] * k[s][d];
                z4[d] += h * B4[s] * k[s][d];
            }
        }
        let err = (0..2)
            .map(|d| (z5[d] - z4[d]).abs() / (tol + tol * z5[d].abs()))
            .fold(0.0, f64::max);
        if err <= 1.0 {
            t += h;
            z = z5;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    z[0]
}

/// Epistatic Michalewicz evaluated straight from its definition, 1-based.
pub fn michalewicz_oracle(x: &[f64]) -> f64 {
    let n = x.len();
    let (s, c) = ((PI / 6.0).sin(), (PI / 6.0).cos());
    let mut total = 0.0;
    for i in 1..=n {
        let y = if i == n {
            x[n - 1]
        } else if i % 2 == 1 {
            x[i - 1] * c - x[i] * s
        } else {
            x[i - 2] * s + x[i - 1] * c
        };
        total += y.sin() * (i as f64 * y * y / PI).sin().powf(20.0);
    }
    total
}

/// Royal Road S1 by scanning each block's five loci one at a time.
pub fn royal_road_oracle(bits: &[u8]) -> f64 {
    let mut total = 0.0;
    for block in 0..8 {
        let mut instance = true;
        for offset in 0..5 {
            if bits[block * 5 + offset] != 1 {
                instance = false;
            }
        }
        if instance {
            total += 10.0;
        }
    }
    total
}

/// Spreadsheet-style mean / sample sd / 1.96 sd / sqrt(R) of one column.
pub fn mean_ci_oracle(column: &[f64]) -> (f64, f64) {
    let r = column.len() as f64;
    let mut sum = 0.0;
    for v in column {
        sum += v;
    }
    let mean = sum / r;
    let mut ss = 0.0;
    for v in column {
        ss += (v - mean) * (v - mean);
    }
    let sd = (ss / (r - 1.0)).sqrt();
    (mean, 1.96 * sd / r.sqrt())
}
