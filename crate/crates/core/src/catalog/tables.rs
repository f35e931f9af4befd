//! Transcribed rule tables: generator rows plus per-region constants.
//!
//! Each row is a generator pattern and a weight expression. Constants are
//! expressions evaluated in order; names starting with `_` are helpers.

use crate::moments::Region;

pub(crate) struct Table {
    pub n: usize,
    pub degree: u32,
    /// Closed-form constants (as opposed to printed decimals).
    pub closed_form: bool,
    pub rows: &'static [(&'static str, &'static str)],
    pub variants: &'static [(Region, &'static [(&'static str, &'static str)])],
}

use Region::{Ball, ExpR, ExpR2};

pub(crate) const T3_10_4: Table = Table {
    n: 3,
    degree: 4,
    closed_form: true,
    rows: &[("g,0,0", "W3"), ("a,(±c,0)_S", "W2"), ("-b,0,0", "W1"), ("-e,±f,±f", "W4")],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "(sqrt(3)-1)/2"),
                ("b", "(sqrt(7)-1)/2"),
                ("c", "sqrt(3-sqrt(3))"),
                ("e", "(sqrt(3)+1)/2"),
                ("f", "sqrt((sqrt(3)+3)/2)"),
                ("g", "(sqrt(7)+1)/2"),
                ("W1", "pi^(3/2)*(2*sqrt(7)+7)/42"),
                ("W2", "pi^(3/2)*(sqrt(3)+2)/24"),
                ("W3", "pi^(3/2)*(7-2*sqrt(7))/42"),
                ("W4", "pi^(3/2)*(2-sqrt(3))/24"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "(2*sqrt(3)-1)/sqrt(77)"),
                ("b", "(2*sqrt(203)-sqrt(77))/35"),
                ("c", "sqrt((48-8*sqrt(3))/77)"),
                ("e", "(2*sqrt(3)+1)/sqrt(77)"),
                ("f", "sqrt((24+4*sqrt(3))/77)"),
                ("g", "(2*sqrt(203)+sqrt(77))/35"),
                ("W1", "pi*(841+32*sqrt(11)*sqrt(29))/5220"),
                ("W2", "7*pi*(13+4*sqrt(3))/720"),
                ("W3", "pi*(841-32*sqrt(11)*sqrt(29))/5220"),
                ("W4", "7*pi*(13-4*sqrt(3))/720"),
            ],
        ),
    ],
};

pub(crate) const T3_11_4: Table = Table {
    n: 3,
    degree: 4,
    closed_form: false,
    rows: &[
        ("±5.123512671436,4.925613098468,0", "0.379658096396"),
        ("±4.102816292737,-1.218122471265,1.544992698170", "1.815112382679"),
        ("±3.636092685910,-1.218122471265,-4.843920857272", "0.737101279022"),
        ("0,-1.836923221948,0", "8.813498359176"),
        ("0,-12.639707409137,-3.423767380484", "0.036648025338"),
        ("0,1.948389609086,-1.422580596634", "7.054048788228"),
        ("0,1.703608086180,3.398957047139", "3.331366718822"),
        ("0,-8.635010968135,11.051160549267", "0.033435820963"),
    ],
    variants: &[(ExpR, &[])],
};

pub(crate) const T4_16_4A: Table = Table {
    n: 4,
    degree: 4,
    closed_form: true,
    rows: &[
        ("0,0,0,0", "W0"),
        ("(c,c,-b,-b)_S", "W1"),
        ("(-e,-a,-a,-a)_S", "W1"),
        ("f,f,f,f", "W2"),
        ("(g,-e,-e,-e)_S", "W2"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "(3*sqrt(3)-sqrt(15))/12"),
                ("b", "(sqrt(15)-sqrt(3))/6"),
                ("c", "(sqrt(15)+sqrt(3))/6"),
                ("e", "(sqrt(15)+sqrt(3))/4"),
                ("f", "sqrt(3)"),
                ("g", "(3*sqrt(15)-sqrt(3))/4"),
                ("W0", "pi^2/12"),
                ("W1", "9*pi^2/100"),
                ("W2", "pi^2/300"),
            ],
        ),
        (
            ExpR,
            &[
                ("a", "(3*sqrt(42)-sqrt(210))/12"),
                ("b", "(sqrt(210)-sqrt(42))/6"),
                ("c", "(sqrt(210)+sqrt(42))/6"),
                ("e", "(sqrt(210)+sqrt(42))/4"),
                ("f", "sqrt(42)"),
                ("g", "(3*sqrt(210)-sqrt(42))/4"),
                ("W0", "29*pi^2/7"),
                ("W1", "27*pi^2/35"),
                ("W2", "pi^2/35"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "(3*sqrt(3)-sqrt(15))/24"),
                ("b", "(sqrt(15)-sqrt(3))/12"),
                ("c", "(sqrt(15)+sqrt(3))/12"),
                ("e", "(sqrt(15)+sqrt(3))/8"),
                ("f", "sqrt(3)/2"),
                ("g", "(3*sqrt(15)-sqrt(3))/8"),
                ("W0", "-pi^2/9"),
                ("W1", "3*pi^2/50"),
                ("W2", "pi^2/450"),
            ],
        ),
    ],
};

pub(crate) const T4_16_4B: Table = Table {
    n: 4,
    degree: 4,
    closed_form: true,
    rows: &[
        ("0,0,0,0", "W0"),
        ("0,0,0,-c", "W1"),
        ("0,0,c,0", "W1"),
        ("±b,0,-a,0", "W1"),
        ("0,±b,0,a", "W1"),
        ("±b,±b,a,-a", "W2"),
        ("0,±b,-c,-a", "W2"),
        ("±b,0,a,c", "W2"),
        ("0,0,-c,c", "W2"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "sqrt(1/2)"),
                ("b", "sqrt(3/2)"),
                ("c", "sqrt(2)"),
                ("W0", "pi^2/4"),
                ("W1", "pi^2/12"),
                ("W2", "pi^2/36"),
            ],
        ),
        (
            ExpR,
            &[
                ("a", "sqrt(7)"),
                ("b", "sqrt(21)"),
                ("c", "sqrt(28)"),
                ("W0", "39*pi^2/7"),
                ("W1", "5*pi^2/7"),
                ("W2", "5*pi^2/21"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "sqrt(1/8)"),
                ("b", "sqrt(3/8)"),
                ("c", "sqrt(1/2)"),
                ("W0", "0"),
                ("W1", "pi^2/18"),
                ("W2", "pi^2/54"),
            ],
        ),
    ],
};

pub(crate) const T5_22_4: Table = Table {
    n: 5,
    degree: 4,
    closed_form: true,
    rows: &[
        ("0,0,0,0,0", "W0"),
        ("c,c,c,c,c", "W1"),
        ("(-h,a,a,a,a)_S", "W1"),
        ("(-b,-b,-b,g,g)_S", "W2"),
        ("(e,-f,-f,-f,-f)_S", "W2"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "(2*sqrt(3)-sqrt(2))/10"),
                ("b", "(2*sqrt(3)-sqrt(2))/5"),
                ("c", "sqrt(1/2)"),
                ("e", "(4*sqrt(3)-2*sqrt(2))/5"),
                ("f", "(sqrt(3)+2*sqrt(2))/5"),
                ("g", "(3*sqrt(3)+sqrt(2))/5"),
                ("h", "(8*sqrt(3)+sqrt(2))/10"),
                ("W0", "pi^(5/2)/4"),
                ("W1", "pi^(5/2)/18"),
                ("W2", "pi^(5/2)/36"),
            ],
        ),
        (
            ExpR,
            &[
                ("a", "(4*sqrt(3)-2*sqrt(2))/5"),
                ("b", "(8*sqrt(3)-4*sqrt(2))/5"),
                ("c", "sqrt(8)"),
                ("e", "(16*sqrt(3)-8*sqrt(2))/5"),
                ("f", "(4*sqrt(3)+8*sqrt(2))/5"),
                ("g", "(12*sqrt(3)+4*sqrt(2))/5"),
                ("h", "(16*sqrt(3)+2*sqrt(2))/5"),
                ("W0", "28*pi^2"),
                ("W1", "8*pi^2/3"),
                ("W2", "4*pi^2/3"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "(sqrt(6)-1)/15"),
                ("b", "(2*sqrt(6)-2)/15"),
                ("c", "1/3"),
                ("e", "(4*sqrt(6)-4)/15"),
                ("f", "(sqrt(6)+4)/15"),
                ("g", "(3*sqrt(6)+2)/15"),
                ("h", "(4*sqrt(6)+1)/15"),
                ("W0", "2*pi^2/105"),
                ("W1", "4*pi^2/105"),
                ("W2", "2*pi^2/105"),
            ],
        ),
    ],
};

pub(crate) const T6_28_4: Table = Table {
    n: 6,
    degree: 4,
    closed_form: true,
    rows: &[
        ("0,0,0,0,0,0", "W0"),
        ("-c,±e,0,0,0,0", "W1"),
        ("-c,0,±(b,b,b,-b)_S", "W1"),
        ("a,-b,±(b,b,b,b)", "W1"),
        ("a,-b,(b,b,-b,-b)_S", "W1"),
        ("f,0,0,0,0,0", "W1"),
        ("a,b,±(e,0,0,0)_S", "W1"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "1/2"),
                ("b", "sqrt(3/4)"),
                ("c", "1"),
                ("e", "sqrt(3)"),
                ("f", "2"),
                ("W0", "pi^3/4"),
                ("W1", "pi^3/36"),
            ],
        ),
        (
            ExpR,
            &[
                ("a", "sqrt(9/2)"),
                ("b", "sqrt(27/2)"),
                ("c", "sqrt(18)"),
                ("e", "sqrt(54)"),
                ("f", "sqrt(72)"),
                ("W0", "50*pi^3"),
                ("W1", "70*pi^3/27"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "sqrt(1/20)"),
                ("b", "sqrt(3/20)"),
                ("c", "sqrt(1/5)"),
                ("e", "sqrt(3/5)"),
                ("f", "sqrt(4/5)"),
                ("W0", "pi^3/96"),
                ("W1", "5*pi^3/864"),
            ],
        ),
    ],
};

pub(crate) const T7_38_4: Table = Table {
    n: 7,
    degree: 4,
    closed_form: false,
    rows: &[
        ("0×7", "W0"),
        ("c×7", "-W2"),
        ("-b×7", "-W1"),
        ("(f,-e×6)_S", "W3"),
        ("(h,a×6)_S", "W4"),
        ("(-i,-i,g×5)_S", "W5"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "0.2286166663871"),
                ("b", "0.2590817563916"),
                ("c", "0.3117777721419"),
                ("e", "0.4422503418055"),
                ("f", "0.4505846393780"),
                ("g", "0.7531484451994"),
                ("h", "1.0981884332902"),
                ("i", "1.8927504201541"),
                ("W0", "59.8014451908073"),
                ("W1", "89.9014937680773"),
                ("W2", "79.9432767398149"),
                ("W3", "11.6616239025637"),
                ("W4", "11.0688850060780"),
                ("W5", "0.2803313076587"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "0.0974824740891"),
                ("b", "0.1104728321147"),
                ("c", "0.1329424887288"),
                ("e", "0.1885761793629"),
                ("f", "0.1921299357884"),
                ("g", "0.3211435760773"),
                ("h", "0.4682691213418"),
                ("i", "0.8070714909185"),
                ("W0", "5.2337832579847"),
                ("W1", "9.4465413692728"),
                ("W2", "8.4001659957515"),
                ("W3", "1.2253635397056"),
                ("W4", "1.1630805645052"),
                ("W5", "0.0294562546617"),
            ],
        ),
    ],
};

pub(crate) const T4_23_5: Table = Table {
    n: 4,
    degree: 5,
    closed_form: true,
    rows: &[
        ("0,0,0,0", "W0"),
        ("±h,0,0,0", "W2"),
        ("0,±h,0,0", "W1"),
        ("±c,±(b,-a),±c", "W1"),
        ("±c,±(b,e),0", "W1"),
        ("0,±(a,-g),0", "W1"),
        ("0,±(a,b),±f", "W1"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("a", "sqrt(1/3)"),
                ("b", "sqrt(2/3)"),
                ("c", "1"),
                ("e", "sqrt(4/3)"),
                ("f", "sqrt(2)"),
                ("g", "sqrt(8/3)"),
                ("h", "sqrt(3)"),
                ("W0", "pi^2/3"),
                ("W1", "pi^2/32"),
                ("W2", "pi^2/48"),
            ],
        ),
        (
            ExpR,
            &[
                ("a", "sqrt(14/3)"),
                ("b", "sqrt(28/3)"),
                ("c", "sqrt(14)"),
                ("e", "sqrt(56/3)"),
                ("f", "sqrt(28)"),
                ("g", "sqrt(112/3)"),
                ("h", "sqrt(42)"),
                ("W0", "44*pi^2/7"),
                ("W1", "15*pi^2/56"),
                ("W2", "5*pi^2/28"),
            ],
        ),
        (
            Ball,
            &[
                ("a", "sqrt(1/12)"),
                ("b", "sqrt(1/6)"),
                ("c", "sqrt(1/4)"),
                ("e", "sqrt(1/3)"),
                ("f", "sqrt(1/2)"),
                ("g", "sqrt(2/3)"),
                ("h", "sqrt(3/4)"),
                ("W0", "pi^2/18"),
                ("W1", "pi^2/48"),
                ("W2", "pi^2/72"),
            ],
        ),
    ],
};

pub(crate) const T6_44_5: Table = Table {
    n: 6,
    degree: 5,
    closed_form: false,
    rows: &[
        ("(0,0,0,0,0,±b)_S", "W1"),
        ("(a,a,a,a,a,-a)_S", "W2"),
        ("(a,a,a,-a,-a,-a)_S", "W2"),
        ("(a,-a,-a,-a,-a,-a)_S", "W2"),
    ],
    variants: &[(
        ExpR,
        &[
            ("a", "4.84099298434420"),
            ("b", "5.40578920173885"),
            ("W1", "274.495347525855"),
            ("W2", "13.3377822289287"),
        ],
    )],
};

pub(crate) const T2_10_6: Table = Table {
    n: 2,
    degree: 6,
    closed_form: false,
    rows: &[
        ("±3.314013565941806,2.014171295633760", "0.000757833922865"),
        ("±1.411670545911536,-0.242569904073576", "0.236161927729435"),
        ("±0.713033732783175,-1.432390280414699", "0.146082553662775"),
        ("±0.691608815107559,0.877693534044218", "0.485399260031153"),
        ("0,-0.261367769356158", "1.387418367858287"),
        ("0,2.335832264987514", "0.017371135039050"),
    ],
    variants: &[(ExpR2, &[])],
};

pub(crate) const T2_11_6: Table = Table {
    n: 2,
    degree: 6,
    closed_form: false,
    rows: &[
        ("0,0", "3.927702275194840"),
        ("0,10.299713185154499", "0.003846684331349"),
        ("0,-3.895765525253948", "0.474246212300936"),
        ("±10.311630315898372,3.397224688449697", "0.002841012046587"),
        ("±6.251012172182811,-8.794364006109971", "0.002944454683352"),
        ("±3.752487980256190,-1.228482827331175", "0.460111970539923"),
        ("±2.312667676618243,3.141828043257887", "0.472797630406369"),
    ],
    variants: &[(ExpR, &[])],
};

pub(crate) const T6_127_7: Table = Table {
    n: 6,
    degree: 7,
    closed_form: true,
    rows: &[
        ("0×6", "W0"),
        ("±g,0,0,0,0,0", "W1"),
        ("±c,(±f,0,0,0,0)_S", "W1"),
        ("±(a,b,b,b,b,b)", "W1"),
        ("±(a,(b,b,b,-b,-b)_S)", "W1"),
        ("±(a,(b,-b,-b,-b,-b)_S)", "W1"),
        ("±(h,(e,e,e,e,-e)_S)", "W2"),
        ("±(h,(e,e,-e,-e,-e)_S)", "W2"),
        ("±(h,-e,-e,-e,-e,-e)", "W2"),
        ("0,(±i,±i,0,0,0)_S", "W2"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("_t", "4-sqrt(6)"),
                ("_u", "6+sqrt(6)"),
                ("g", "sqrt(_t*2)"),
                ("c", "sqrt(_t/2)"),
                ("f", "sqrt(_t*3/2)"),
                ("a", "sqrt(_t/8)"),
                ("b", "sqrt(_t*3/8)"),
                ("e", "sqrt(_u/8)"),
                ("h", "sqrt(_u*3/8)"),
                ("i", "sqrt(_u/2)"),
                ("W0", "(16-sqrt(6))*pi^3/100"),
                ("W1", "(68+27*sqrt(6))*pi^3/9000"),
                ("W2", "(54-19*sqrt(6))*pi^3/9000"),
            ],
        ),
        (
            Ball,
            &[
                ("g", "sqrt(2/3)"),
                ("c", "sqrt(1/6)"),
                ("f", "sqrt(1/2)"),
                ("a", "sqrt(1/24)"),
                ("b", "sqrt(1/8)"),
                ("e", "sqrt(1/8)"),
                ("h", "sqrt(3/8)"),
                ("i", "sqrt(1/2)"),
                ("W0", "pi^3/240"),
                ("W1", "pi^3/480"),
                ("W2", "pi^3/1440"),
            ],
        ),
    ],
};

pub(crate) const T7_183_7: Table = Table {
    n: 7,
    degree: 7,
    closed_form: true,
    rows: &[
        ("0×7", "W0"),
        ("±(-m,0,0,0,0,0,0)", "W1"),
        ("±(-c,k,0,0,0,0,0)", "W1"),
        ("±(-c,-f,(±i,0,0,0,0)_S)", "W1"),
        ("±(-c,a,e,e,e,e,e)", "W1"),
        ("±(-c,a,(e,e,e,-e,-e)_S)", "W1"),
        ("±(-c,a,(e,-e,-e,-e,-e)_S)", "W1"),
        ("±(j,p,0,0,0,0,0)", "W2"),
        ("±(j,b,g,g,g,g,g)", "W2"),
        ("±(j,b,(g,g,g,-g,-g)_S)", "W2"),
        ("±(j,b,(g,-g,-g,-g,-g)_S)", "W2"),
        ("±(j,-h,(±o,0,0,0,0)_S)", "W2"),
        ("±(0,l,(g,g,g,g,-g)_S)", "W2"),
        ("±(0,l,(g,g,-g,-g,-g)_S)", "W2"),
        ("±(0,l,-g,-g,-g,-g,-g)", "W2"),
        ("0,0,(±o,±o,0,0,0)_S", "W2"),
    ],
    variants: &[
        (
            ExpR2,
            &[
                ("_t", "9-4*sqrt(3)"),
                ("_u", "sqrt(3)+6"),
                ("m", "sqrt(_t*3/2)"),
                ("c", "sqrt(_t/6)"),
                ("k", "sqrt(_t*4/3)"),
                ("f", "sqrt(_t/3)"),
                ("i", "sqrt(_t)"),
                ("a", "sqrt(_t/12)"),
                ("e", "sqrt(_t/4)"),
                ("j", "sqrt(_u/3)"),
                ("p", "sqrt(_u*2/3)"),
                ("b", "sqrt(_u/24)"),
                ("g", "sqrt(_u/8)"),
                ("h", "sqrt(_u/6)"),
                ("o", "sqrt(_u/2)"),
                ("l", "sqrt(_u*3/8)"),
                ("W0", "(144-35*sqrt(3))*pi^(7/2)/1089"),
                ("W1", "(675+388*sqrt(3))*pi^(7/2)/95832"),
                ("W2", "(90-37*sqrt(3))*pi^(7/2)/23958"),
            ],
        ),
        (
            Ball,
            &[
                ("_t", "117-4*sqrt(78)"),
                ("_u", "sqrt(78)+78"),
                ("m", "sqrt(_t*3/377)"),
                ("c", "sqrt(_t/1131)"),
                ("k", "sqrt(_t*8/1131)"),
                ("f", "sqrt(_t*2/1131)"),
                ("i", "sqrt(_t*2/377)"),
                ("a", "sqrt(_t/2262)"),
                ("e", "sqrt(_t/754)"),
                ("j", "sqrt(_u/273)"),
                ("p", "sqrt(_u*2/273)"),
                ("b", "sqrt(_u/2184)"),
                ("g", "sqrt(_u/728)"),
                ("h", "sqrt(_u/546)"),
                ("o", "sqrt(_u/182)"),
                ("l", "sqrt(_u*3/728)"),
                ("W0", "(6912-7*2^(11/2)*sqrt(39))*pi^3/2264031"),
                ("W1", "(104598+1085*2^(7/2)*sqrt(39))*pi^3/124521705"),
                ("W2", "(101088-235*2^(9/2)*sqrt(39))*pi^3/124521705"),
            ],
        ),
    ],
};
