//! Frozen reference data for the acceptance suite: the published point orbit
//! and family over Z_3^5 (vectors as digit strings), the 70 open parameter
//! sets for v <= 10^4 and m > 2, the ruled-out m = 2 lists, and the five
//! open m = 2 cases with v <= 50.

/// The size-11 point orbit of <(1,0,0,0,0)>, as printed (representatives are
/// not normalized; compare projectively).
pub const ORBIT_1: [&str; 11] = [
    "10000", "11002", "22101", "10210", "00212", "01200", "00101", "20021", "22120", "01012",
    "02020",
];

pub const B1: [&str; 22] = [
    "10000", "11002", "22101", "10210", "00212", "01200", "00101", "20021", "22120", "01012",
    "02020", "20000", "22001", "11202", "20120", "00121", "02100", "00202", "10012", "11210",
    "02021", "01010",
];

pub const B2: [&str; 22] = [
    "12212", "10120", "22122", "10002", "20022", "10100", "10010", "02220", "11022", "01210",
    "21022", "21121", "20210", "11211", "20001", "10011", "20200", "20020", "01110", "22011",
    "02120", "12011",
];

pub const B3: [&str; 22] = [
    "20222", "11122", "00221", "01111", "10021", "11121", "12211", "22110", "10121", "10102",
    "22000", "10111", "22211", "00112", "02222", "20012", "22212", "21122", "11220", "20212",
    "20201", "11000",
];

pub const B4: [&str; 22] = [
    "11112", "12000", "12220", "22021", "20011", "01202", "12121", "11020", "22220", "00020",
    "12112", "22221", "21000", "21110", "11012", "10022", "02101", "21212", "22010", "11110",
    "00010", "21221",
];

pub const B5: [&str; 22] = [
    "12001", "00200", "01022", "20211", "02221", "02002", "10211", "21222", "10201", "00001",
    "21010", "21002", "00100", "02011", "10122", "01112", "01001", "20122", "12111", "20102",
    "00002", "12020",
];

pub const B6: [&str; 22] = [
    "11001", "01121", "01212", "00012", "00211", "10220", "21100", "20121", "21101", "11101",
    "00102", "22002", "02212", "02121", "00021", "00122", "20110", "12200", "10212", "12202",
    "22202", "00201",
];

pub const B7: [&str; 22] = [
    "02022", "22020", "02001", "22201", "12221", "10001", "02012", "01102", "10110", "01201",
    "21111", "01011", "11010", "01002", "11102", "21112", "20002", "01021", "02201", "20220",
    "02102", "12222",
];

pub const B8: [&str; 22] = [
    "10221", "12110", "02122", "21001", "12120", "20010", "10222", "00120", "11120", "21201",
    "10112", "20112", "21220", "01211", "12002", "21210", "10020", "20111", "00210", "22210",
    "12102", "20221",
];

pub const B9: [&str; 22] = [
    "21102", "02111", "12100", "11201", "02110", "21120", "02200", "02210", "20101", "12022",
    "00022", "12201", "01222", "21200", "22102", "01220", "12210", "01100", "01120", "10202",
    "21011", "00011",
];

pub const B10: [&str; 22] = [
    "21211", "01000", "02112", "00110", "20202", "02010", "22112", "22111", "01101", "22100",
    "22200", "12122", "02000", "01221", "00220", "10101", "01020", "11221", "11222", "02202",
    "11200", "11100",
];

pub const B11: [&str; 22] = [
    "12021", "12012", "12101", "02211", "11111", "21020", "00222", "22121", "22022", "11021",
    "10200", "21012", "21021", "21202", "01122", "22222", "12010", "00111", "11212", "11011",
    "22012", "20100",
];

pub const B_ALL: [&[&str; 22]; 11] = [&B1, &B2, &B3, &B4, &B5, &B6, &B7, &B8, &B9, &B10, &B11];

/// The 70 open parameter sets for v <= 10^4, m > 2, not near-complete.
pub const OPEN_70: [(u64, u64, u64, u64); 70] = [
    (540, 12, 42, 36),
    (784, 30, 18, 12),
    (1089, 35, 24, 18),
    (1540, 77, 18, 16),
    (1701, 35, 30, 18),
    (1701, 35, 40, 32),
    (2058, 86, 22, 20),
    (2376, 11, 190, 152),
    (2401, 7, 280, 196),
    (2401, 9, 60, 12),
    (2401, 9, 120, 48),
    (2401, 9, 180, 108),
    (2401, 9, 240, 192),
    (2401, 16, 120, 90),
    (2401, 37, 40, 24),
    (2401, 65, 30, 24),
    (2500, 18, 105, 75),
    (2500, 35, 42, 24),
    (2500, 52, 42, 36),
    (2601, 53, 40, 32),
    (2625, 42, 48, 36),
    (2646, 16, 138, 108),
    (2784, 116, 22, 20),
    (3025, 57, 36, 24),
    (3381, 23, 130, 110),
    (3888, 24, 156, 144),
    (3888, 47, 52, 32),
    (3888, 47, 78, 72),
    (3969, 32, 112, 98),
    (4096, 8, 390, 260),
    (4096, 14, 105, 35),
    (4096, 14, 210, 140),
    (4225, 67, 48, 36),
    (4375, 7, 162, 36),
    (4375, 7, 324, 144),
    (4375, 7, 486, 324),
    (4375, 7, 540, 400),
    (4375, 9, 405, 300),
    (4375, 16, 270, 250),
    (4375, 37, 108, 96),
    (4375, 37, 54, 24),
    (4375, 37, 81, 54),
    (4564, 163, 26, 24),
    (4625, 37, 68, 36),
    (5376, 44, 75, 45),
    (5376, 44, 100, 80),
    (5776, 78, 60, 48),
    (5832, 8, 595, 425),
    (5832, 8, 714, 612),
    (5832, 18, 147, 63),
    (5832, 18, 294, 252),
    (5832, 35, 98, 56),
    (5832, 86, 49, 35),
    (5888, 92, 58, 52),
    (6400, 80, 54, 36),
    (6656, 26, 121, 55),
    (6656, 26, 242, 220),
    (6860, 20, 266, 196),
    (6860, 58, 95, 75),
    (6976, 218, 30, 28),
    (8281, 93, 60, 40),
    (8625, 23, 140, 50),
    (8625, 23, 280, 200),
    (8960, 7, 1054, 744),
    (8960, 32, 238, 196),
    (9801, 13, 420, 216),
    (9801, 26, 308, 242),
    (9801, 57, 140, 112),
    (9801, 101, 70, 50),
    (9801, 101, 84, 72),
];

/// m = 2 parameter sets excluded by the two-prime theorem.
pub const RULED_OUT_TWO_PRIME: [(u64, u64, u64, u64); 7] = [
    (19, 2, 6, 2),
    (26, 2, 10, 4),
    (46, 2, 15, 5),
    (118, 2, 39, 13),
    (122, 2, 22, 4),
    (154, 2, 51, 17),
    (172, 2, 57, 19),
];

/// Further m = 2 parameter sets excluded by the exponent bound.
pub const RULED_OUT_EXPONENT: [(u64, u64, u64, u64); 18] = [
    (37, 2, 12, 4),
    (101, 2, 20, 4),
    (101, 2, 30, 9),
    (101, 2, 40, 16),
    (122, 2, 44, 16),
    (127, 2, 42, 14),
    (129, 2, 48, 18),
    (163, 2, 18, 2),
    (163, 2, 36, 8),
    (163, 2, 54, 18),
    (163, 2, 72, 32),
    (177, 2, 44, 11),
    (181, 2, 60, 20),
    (197, 2, 28, 4),
    (197, 2, 42, 9),
    (197, 2, 56, 16),
    (197, 2, 70, 25),
    (197, 2, 84, 36),
];

/// The only open m = 2 cases with v <= 50.
pub const OPEN_M2_V50: [(u64, u64, u64, u64); 5] = [
    (28, 2, 9, 3),
    (33, 2, 8, 2),
    (49, 2, 12, 3),
    (50, 2, 14, 4),
    (50, 2, 21, 9),
];
