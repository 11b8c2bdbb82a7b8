//! Integer webs used as regression fixtures.

/// Ten singular points on the plane, four of them on the line `x5 = 0`.
pub const COLLINEAR_QUADRUPLE_WEB: [[[i64; 8]; 8]; 4] = [
    [
        [0, -4, 4, 0, 1, -2, 0, 1],
        [-4, 4, 4, 3, -3, 2, 2, -2],
        [4, 4, 4, 1, -1, 0, -1, 0],
        [0, 3, 1, -2, -1, -2, -1, 2],
        [1, -3, -1, -1, 2, 0, 0, 0],
        [-2, 2, 0, -2, 0, 0, 0, 0],
        [0, 2, -1, -1, 0, 0, 0, 0],
        [1, -2, 0, 2, 0, 0, 0, 0],
    ],
    [
        [-2, 2, -1, -3, 0, 0, 0, -2],
        [2, 0, -4, 1, 1, 4, -3, 2],
        [-1, -4, 2, 3, 1, 1, 0, -1],
        [-3, 1, 3, -2, -3, 1, -3, 1],
        [0, 1, 1, -3, 2, -2, 0, 0],
        [0, 4, 1, 1, -2, 0, 0, 0],
        [0, -3, 0, -3, 0, 0, 0, 0],
        [-2, 2, -1, 1, 0, 0, 0, 0],
    ],
    [
        [-4, 1, 1, 1, -2, -1, -1, -1],
        [1, 4, -1, -1, -3, -3, 0, 1],
        [1, -1, 2, -4, 0, 2, 2, 1],
        [1, -1, -4, 2, -1, -1, 1, 1],
        [-2, -3, 0, -1, -4, -2, 0, 0],
        [-1, -3, 2, -1, -2, 0, 0, 0],
        [-1, 0, 2, 1, 0, 0, 0, 0],
        [-1, 1, 1, 1, 0, 0, 0, 0],
    ],
    [
        [-4, -1, -4, 3, -1, 4, 1, 0],
        [-1, 4, -4, -3, 0, 3, -1, 0],
        [-4, -4, 0, 1, 0, 1, 1, 1],
        [3, -3, 1, 2, 2, 1, 0, -2],
        [-1, 0, 0, 2, 4, 3, 0, 0],
        [4, 3, 1, 1, 3, 0, 0, 0],
        [1, -1, 1, 0, 0, 0, 0, 0],
        [0, 0, 1, -2, 0, 0, 0, 0],
    ],
];

/// A web satisfying all four assumptions whose first member has rank five.
pub const RANK_FIVE_WEB: [[[i64; 8]; 8]; 4] = [
    [
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 6, 0, -4, 0, -2, 1],
        [0, 0, 0, 4, 3, 0, 2, -4],
        [0, 0, -4, 3, 8, 0, -5, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, -2, 2, -5, 0, 0, 0],
        [0, 0, 1, -4, 0, 0, 0, 0],
    ],
    [
        [-4, -4, 2, -1, 0, -1, -1, -3],
        [-4, 2, 0, 0, 4, -2, 0, -1],
        [2, 0, 0, -1, 2, -2, 4, 2],
        [-1, 0, -1, 2, 3, -1, 3, -2],
        [0, 4, 2, 3, -4, -2, 0, 1],
        [-1, -2, -2, -1, -2, 0, 0, 0],
        [-1, 0, 4, 3, 0, 0, 0, 0],
        [-3, -1, 2, -2, 1, 0, 0, 0],
    ],
    [
        [4, -3, -3, -2, 1, -3, -3, -1],
        [-3, -2, -3, -4, 1, 4, 3, 1],
        [-3, -3, 4, 1, 0, 1, 1, 1],
        [-2, -4, 1, 2, -2, 0, 1, 4],
        [1, 1, 0, -2, 4, -1, 0, -1],
        [-3, 4, 1, 0, -1, 0, 0, 0],
        [-3, 3, 1, 1, 0, 0, 0, 0],
        [-1, 1, 1, 4, -1, 0, 0, 0],
    ],
    [
        [4, -1, 2, 2, -2, -1, -2, 0],
        [-1, 2, 2, -3, -1, -4, -2, 4],
        [2, 2, -2, -1, 1, 3, 2, -1],
        [2, -3, -1, -2, 0, 1, 3, -2],
        [-2, -1, 1, 0, -4, 4, 1, -1],
        [-1, -4, 3, 1, 4, 0, 0, 0],
        [-2, -2, 2, 3, 1, 0, 0, 0],
        [0, 4, -1, -2, -1, 0, 0, 0],
    ],
];
