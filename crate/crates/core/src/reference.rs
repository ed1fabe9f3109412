//! Published reference data for small configurations.
//!
//! Matrices are written row by row; polynomials as `(exponent, coefficient)`
//! pairs in the variable `a`.

/// A seven-line chirality matrix with determinant −18.
pub const SEVEN_LINE_CHIRALITY: [[i64; 7]; 7] = [
    [0, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 1, 1, -1, 1],
    [1, 1, 0, -1, -1, -1, 1],
    [1, 1, -1, 0, -1, 1, 1],
    [1, 1, -1, -1, 0, 1, -1],
    [1, -1, -1, 1, 1, 0, 1],
    [1, 1, 1, 1, -1, 1, 0],
];

/// Chirality matrix of the entangled six-line configuration (determinant 27,
/// small cluster).
pub const ENTANGLED_SIX_CHIRALITY: [[i64; 6]; 6] = [
    [0, 1, 1, 1, -1, -1],
    [1, 0, 1, 1, 1, 1],
    [1, 1, 0, 1, 1, 1],
    [1, 1, 1, 0, -1, -1],
    [-1, 1, 1, -1, 0, 1],
    [-1, 1, 1, -1, 1, 0],
];

/// Projection matrix of the same configuration, component by component.
pub const ENTANGLED_SIX_PROJECTION: [[[i8; 6]; 6]; 6] = [
    [
        [0, 0, 0, 0, 0, 0],
        [0, 0, -1, -1, -1, -1],
        [0, 1, 0, 1, 1, -1],
        [0, 1, -1, 0, -1, -1],
        [0, 1, -1, 1, 0, -1],
        [0, 1, 1, 1, 1, 0],
    ],
    [
        [0, 0, -1, -1, -1, -1],
        [0, 0, 0, 0, 0, 0],
        [1, 0, 0, 1, 1, 1],
        [1, 0, -1, 0, 1, 1],
        [1, 0, -1, -1, 0, 1],
        [1, 0, -1, -1, -1, 0],
    ],
    [
        [0, -1, 0, 1, 1, -1],
        [1, 0, 0, 1, 1, 1],
        [0, 0, 0, 0, 0, 0],
        [-1, -1, 0, 0, -1, -1],
        [-1, -1, 0, 1, 0, -1],
        [1, -1, 0, 1, 1, 0],
    ],
    [
        [0, -1, 1, 0, -1, -1],
        [1, 0, 1, 0, 1, 1],
        [-1, -1, 0, 0, -1, -1],
        [0, 0, 0, 0, 0, 0],
        [1, -1, 1, 0, 0, -1],
        [1, -1, 1, 0, 1, 0],
    ],
    [
        [0, -1, 1, -1, 0, -1],
        [1, 0, 1, 1, 0, 1],
        [-1, -1, 0, -1, 0, -1],
        [1, -1, 1, 0, 0, -1],
        [0, 0, 0, 0, 0, 0],
        [1, -1, 1, 1, 0, 0],
    ],
    [
        [0, -1, -1, -1, -1, 0],
        [1, 0, 1, 1, 1, 0],
        [1, -1, 0, -1, -1, 0],
        [1, -1, 1, 0, -1, 0],
        [1, -1, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
];

/// Inv as printed for the state reconstructed from the projection above.
pub const ENTANGLED_SIX_INV: f64 = -1.740388404194;

/// Component 0 of a six-line direction tensor before a switch of the triple (0, 3, 4).
pub const SWITCH_COMPONENT_BEFORE: [[i8; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, -1, 1, -1, 1],
    [0, 1, 0, -1, 1, -1],
    [0, -1, 1, 0, 1, -1],
    [0, 1, -1, -1, 0, 1],
    [0, -1, 1, 1, -1, 0],
];

/// Ring matrices before and after that switch.
pub const SWITCH_RING_BEFORE: [[i64; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [3, 0, 1, 3, 1, 1],
    [1, 3, 0, 1, 3, 1],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [2, 2, 4, 2, 2, 0],
];
pub const SWITCH_RING_AFTER: [[i64; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [3, 0, 1, 3, 1, 1],
    [1, 3, 0, 1, 3, 1],
    [3, 1, 1, 0, 3, 1],
    [0, 0, 0, 0, 0, 0],
    [2, 2, 4, 2, 2, 0],
];

/// One row of the six-line classification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SixLineRow {
    pub label: &'static str,
    pub det: i64,
    pub invp: f64,
    pub jd_at_08: f64,
    pub size: usize,
    pub gsum: f64,
}

const fn row(label: &'static str, det: i64, invp: f64, jd_at_08: f64, size: usize, gsum: f64) -> SixLineRow {
    SixLineRow { label, det, invp, jd_at_08, size, gsum }
}

pub const SIX_LINE_TABLE: [SixLineRow; 19] = [
    row("-125", -125, 21.47368, 81.95805, 112, -160.15626),
    row("-125**", -125, 21.47368, 82.84623, 112, -161.01855),
    row("-45", -45, 8.36522, 85.95424, 2256, -3556.33638),
    row("-29", -29, 0.93146, 89.17975, 1835, -2842.88768),
    row("-21", -21, 1.90476, 99.95387, 448, -836.91785),
    row("-21m", -21, -1.80088, 82.28432, 448, -668.07359),
    row("-13", -13, -0.82759, 91.67157, 187, -301.51497),
    row("-5", -5, 14.46046, 94.914, 2100, 142.24454),
    row("-5m", -5, 0.51093, 80.21999, 2100, 2266.87334),
    row("-5*", -5, -34.66667, 64.04794, 16, -7.52044),
    row("-5*m", -5, 26.28571, 162.15833, 16, -40.17786),
    row("11", 11, -17.99234, 72.137, 161, -224.09236),
    row("11m", 11, 14.09524, 125.74818, 161, -250.22019),
    row("19", 19, -14.13903, 76.55007, 635, -981.15722),
    row("19m", 19, 14.00147, 108.91363, 635, -1426.52974),
    row("27", 27, -10.28571, 81.85074, 149, -128.16471),
    row("27m", 27, 13.90769, 94.24605, 149, -219.1273),
    row("27**", 27, -10.28571, 83.23852, 49, -62.15941),
    row("27**m", 27, 13.90769, 93.67761, 49, -455.79888),
];

/// Total number of labeled six-line states over all clusters.
pub const SIX_LINE_TOTAL: usize = 11618;

/// Determinants whose clusters contain their own mirror images.
pub const SELF_MIRROR_DETERMINANTS: [i64; 3] = [-45, -29, -13];

/// Inv values of the 49 states of the small determinant-27 cluster with
/// their neighbor lists (indices into this table).
pub const ENTANGLED_CLUSTER: [(f64, &[usize]); 49] = [
    (-2.37579, &[8, 4, 6, 21]),
    (-2.37797, &[4]),
    (-2.37964, &[11]),
    (-2.35219, &[8, 18, 4]),
    (-2.22147, &[1, 0, 18, 6, 3]),
    (-2.21013, &[10, 6, 8, 32, 40]),
    (-2.13312, &[0, 4, 5]),
    (-2.09907, &[12, 41, 13, 36]),
    (-2.09829, &[0, 31, 3, 19, 5]),
    (-2.06866, &[12, 10, 40, 32]),
    (-2.055, &[5, 9, 39, 34]),
    (-2.01438, &[2, 22, 16]),
    (-1.96632, &[48, 38, 9, 39, 7]),
    (-1.89822, &[38, 7]),
    (-1.8718, &[48, 24]),
    (-1.85554, &[35, 20, 17, 25]),
    (-1.84469, &[11, 42]),
    (-1.83636, &[30, 15, 35]),
    (-1.80519, &[3, 45, 4]),
    (-1.75345, &[46, 32, 8, 21]),
    (-1.7421, &[15, 43, 28]),
    (-1.74039, &[0, 31, 34, 19]),
    (-1.73732, &[11, 33, 43]),
    (-1.69622, &[33, 26, 28, 43, 47]),
    (-1.65429, &[39, 14, 48, 29]),
    (-1.64356, &[15, 37, 42]),
    (-1.64029, &[31, 23, 27]),
    (-1.58079, &[31, 28, 44, 45]),
    (-1.58054, &[20, 27, 23, 35]),
    (-1.53648, &[43, 47, 33, 31]),
    (-1.52182, &[37, 17]),
    (-1.45052, &[8, 47, 26, 21, 29]),
    (-1.44442, &[5, 19, 9, 38, 34]),
    (-1.43336, &[22, 23, 29]),
    (-1.40962, &[21, 32, 10]),
    (-1.4084, &[17, 15, 28, 44]),
    (-1.40598, &[7, 48, 39]),
    (-1.37042, &[30, 25]),
    (-1.35073, &[12, 13, 46, 32]),
    (-1.27873, &[47, 36, 24, 10, 12]),
    (0.1123, &[9, 5]),
    (0.18389, &[7]),
    (0.84907, &[25, 16]),
    (0.91978, &[29, 20, 23, 22]),
    (1.34007, &[35, 27]),
    (2.28626, &[27, 18]),
    (2.32991, &[19, 38]),
    (3.39671, &[48, 39, 23, 31, 29]),
    (-1.73412, &[47, 14, 24, 36, 12]),
];

/// Seven-line classes with positive determinant: `(det, J_D(0.8), InvP)`.
pub const SEVEN_LINE_TABLE: [(i64, f64, f64); 37] = [
    (250, -237.79522, 8.75738),
    (250, -236.67421, 8.75738),
    (250, -233.93737, 8.75738),
    (162, -265.88901, -1.77744),
    (162, -261.94412, -1.77744),
    (162, -259.20728, -1.77744),
    (150, -247.23958, 6.00631),
    (150, -245.488, 6.00631),
    (102, -262.67019, -0.45955),
    (102, -258.39388, -0.45955),
    (90, -251.29501, -5.371),
    (78, -240.1629, -4.03239),
    (70, -272.40407, -7.9003),
    (66, -292.41549, -8.02153),
    (66, -282.99692, -8.02153),
    (54, -335.14428, -9.34009),
    (50, -242.84318, -10.07665),
    (46, -254.17308, -11.50639),
    (42, -347.50543, 23.2139),
    (42, -351.36328, 23.2139),
    (42, -244.93397, 5.91173),
    (34, -293.82026, -11.78187),
    (30, -221.54775, -13.32932),
    (30, -439.11084, 24.24625),
    (26, -475.81905, 22.03808),
    (22, -226.95692, -6.36051),
    (18, -253.66653, -13.90347),
    (18, -265.56832, 8.37689),
    (18, -236.6135, -6.54805),
    (18, -233.87666, -6.54805),
    (14, -592.28519, 20.64775),
    (10, -300.41526, 9.65976),
    (10, -222.20884, -11.20564),
    (6, -169.43634, -54.72727),
    (2, -271.92935, 12.22899),
    (2, -305.51973, 35.05505),
    (2, -304.85789, 35.05505),
];

pub const SEVEN_LINE_CLASSES: usize = 74;
pub const EIGHT_LINE_CLASSES: usize = 506;

pub type Terms = &'static [(i32, i64)];

pub const JD_TWO_LINES: Terms = &[(1, 1), (-1, 1)];
pub const JM_TWO_LINES: Terms = &[(4, -1), (-4, -1)];
pub const JD_THREE_LINES: Terms = &[(-3, -2), (1, -1), (5, -1)];
pub const JM_THREE_LINES: Terms = &[(10, 1), (2, 1), (-6, 2)];
/// Projective bracket of the mirrored three-line configuration, written in `a⁻¹`.
pub const JD_THREE_LINES_MIRROR_INVERTED: Terms = &[(3, -2), (-1, -1), (-5, -1)];

/// Brackets of the entangled six-line configuration (small cluster).
pub const JD_ENTANGLED_SMALL: Terms = &[
    (1, 22),
    (-1, 15),
    (3, -1),
    (-3, -12),
    (5, -12),
    (-5, -13),
    (7, 1),
    (-7, 10),
    (9, 8),
    (-9, 15),
    (11, 3),
    (-13, -5),
    (-17, 1),
];
pub const JM_ENTANGLED_SMALL: Terms = &[
    (0, 881),
    (4, -711),
    (-4, -963),
    (8, 477),
    (-8, 913),
    (12, -261),
    (-12, -767),
    (16, 97),
    (-16, 541),
    (20, -21),
    (-20, -319),
    (24, -3),
    (-24, 141),
    (-28, -45),
    (-32, 9),
    (-36, -1),
];

/// Brackets of a configuration in the large determinant-27 cluster.
pub const JD_ENTANGLED_LARGE: Terms = &[
    (1, 2),
    (3, 5),
    (-3, 3),
    (5, 3),
    (-5, 7),
    (-7, 4),
    (9, 2),
    (11, 3),
    (-11, 1),
    (13, 1),
    (-13, 1),
];
pub const JM_ENTANGLED_LARGE: Terms = &[
    (0, -2),
    (4, -3),
    (-4, -3),
    (8, -2),
    (-8, -4),
    (12, -3),
    (-12, -3),
    (16, -2),
    (-16, -4),
    (20, -1),
    (-20, -1),
    (24, -2),
    (28, -1),
    (-28, -1),
];
