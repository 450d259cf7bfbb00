//! The 20×20 period of the powers-of-3 family and the exponent pattern of
//! its thirtieth δ-iterate (`None` marks the zero entries).

pub const PERIOD: [[u8; 20]; 20] = [
    [1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1],
    [1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0],
    [1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1],
    [1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1],
    [0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1],
    [0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1],
    [1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1],
    [0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0],
];

pub const EXPONENTS: [[Option<i8>; 20]; 20] = [
    [
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
    ],
    [
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
    ],
    [
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
    ],
    [
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
    ],
    [
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
    ],
    [
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
    ],
    [
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
    ],
    [
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
    ],
    [
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
    ],
    [
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
    ],
    [
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
    ],
    [
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
    ],
    [
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
    ],
    [
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
    ],
    [
        None,
        Some(1),
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
    ],
    [
        Some(1),
        None,
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
    ],
    [
        Some(2),
        Some(-1),
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
    ],
    [
        Some(-1),
        None,
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
    ],
    [
        Some(-4),
        Some(0),
        Some(4),
        Some(1),
        Some(-2),
        Some(-1),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(0),
        None,
        Some(-1),
        None,
        Some(1),
        None,
        Some(1),
        Some(2),
        Some(-1),
    ],
    [
        Some(0),
        None,
        Some(1),
        None,
        Some(-1),
        None,
        Some(-1),
        Some(-2),
        Some(1),
        Some(4),
        Some(0),
        Some(-4),
        Some(-1),
        Some(2),
        Some(1),
        None,
        Some(1),
        None,
        Some(-1),
        None,
    ],
];
