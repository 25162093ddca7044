//! Published values of the car example.

#![allow(dead_code)]

/// Published flows are rounded to three decimals.
pub const PUBLISHED_ROUNDING: f64 = 5e-4 + 1e-9;

/// Rows: a1..a10. Each row is (a, r_1, r_2, r_3, r_4) for φ⁺, φ⁻ and φ.
pub const FLOWS: [[[f64; 5]; 3]; 10] = [
    [
        [0.645, 1.0, 0.563, 0.250, 0.0],
        [0.313, 0.0, 0.395, 0.750, 1.0],
        [0.333, 1.0, 0.168, -0.500, -1.0],
    ],
    [
        [0.375, 1.0, 0.688, 0.330, 0.0],
        [0.518, 0.0, 0.313, 0.563, 1.0],
        [-0.143, 1.0, 0.375, -0.233, -1.0],
    ],
    [
        [0.518, 1.0, 0.645, 0.333, 0.0],
        [0.478, 0.0, 0.375, 0.643, 1.0],
        [0.040, 1.0, 0.270, -0.310, -1.0],
    ],
    [
        [0.645, 1.0, 0.580, 0.250, 0.0],
        [0.330, 0.0, 0.395, 0.750, 1.0],
        [0.315, 1.0, 0.185, -0.500, -1.0],
    ],
    [
        [0.580, 1.0, 0.645, 0.250, 0.0],
        [0.395, 0.0, 0.330, 0.750, 1.0],
        [0.185, 1.0, 0.315, -0.500, -1.0],
    ],
    [
        [0.563, 1.0, 0.563, 0.250, 0.0],
        [0.313, 0.0, 0.313, 0.750, 1.0],
        [0.250, 1.0, 0.250, -0.500, -1.0],
    ],
    [
        [0.375, 1.0, 0.708, 0.250, 0.0],
        [0.458, 0.0, 0.313, 0.563, 1.0],
        [-0.083, 1.0, 0.395, -0.313, -1.0],
    ],
    [
        [0.395, 1.0, 0.750, 0.375, 0.0],
        [0.625, 0.0, 0.250, 0.645, 1.0],
        [-0.230, 1.0, 0.500, -0.270, -1.0],
    ],
    [
        [0.375, 1.0, 0.708, 0.313, 0.0],
        [0.520, 0.0, 0.313, 0.563, 1.0],
        [-0.145, 1.0, 0.395, -0.250, -1.0],
    ],
    [
        [0.288, 1.0, 0.750, 0.458, 0.0],
        [0.708, 0.0, 0.250, 0.538, 1.0],
        [-0.420, 1.0, 0.500, -0.080, -1.0],
    ],
];

/// (positive, negative, net) per alternative.
pub const ASSIGNMENTS: [[usize; 3]; 10] = [
    [1, 1, 1],
    [2, 2, 2],
    [2, 2, 2],
    [1, 1, 1],
    [2, 2, 2],
    [2, 1, 2],
    [2, 2, 2],
    [2, 2, 2],
    [2, 2, 2],
    [3, 3, 3],
];

pub const SCENARIO_NET: [(&str, [usize; 10]); 7] = [
    ("Scen0", [1, 3, 2, 2, 2, 2, 2, 3, 2, 3]),
    ("Scen1", [1, 2, 2, 2, 2, 2, 2, 3, 2, 3]),
    ("Scen2", [1, 2, 2, 2, 2, 2, 2, 3, 2, 3]),
    ("Scen3", [1, 3, 2, 2, 2, 2, 2, 3, 2, 3]),
    ("Scen4", [1, 2, 2, 2, 2, 2, 2, 3, 2, 3]),
    ("Scen5", [1, 3, 2, 2, 2, 1, 2, 3, 2, 3]),
    ("Scen6", [1, 2, 2, 2, 2, 1, 2, 3, 2, 3]),
];

/// `P_j(a1, r_h)` per criterion (price, acceleration, max speed, consumption)
/// and profile `r_1..r_4`.
pub const A1_DEGREES: [[f64; 4]; 4] = [
    [0.0, 0.0, 1.0, 1.0],
    [0.0, 0.0, 1.0, 1.0],
    [0.0, 1.0, 1.0, 1.0],
    [0.0, 1.0, 1.0, 1.0],
];
