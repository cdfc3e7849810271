//! Reference classification of geometric baskets with `P_-1 = P_-2 = 0`.

use crate::basket::Basket;
use crate::rational::Rational;

/// One row: basket, `-K^3`, and `P_-3 ..= P_-8`.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub no: u32,
    pub basket: &'static str,
    pub volume: &'static str,
    pub p3_to_p8: [i64; 6],
}

impl TableRow {
    pub fn basket(&self) -> Basket {
        self.basket.parse().expect("table basket parses")
    }

    pub fn volume(&self) -> Rational {
        self.volume.parse().expect("table volume parses")
    }

    /// `P_-1 ..= P_-8`.
    pub fn plurigenera(&self) -> Vec<i64> {
        [0, 0].iter().chain(&self.p3_to_p8).copied().collect()
    }
}

const fn row(no: u32, basket: &'static str, volume: &'static str, p3_to_p8: [i64; 6]) -> TableRow {
    TableRow {
        no,
        basket,
        volume,
        p3_to_p8,
    }
}

pub const TABLE_A: [TableRow; 23] = [
    row(1, "2x(1,2),3x(2,5),(1,3),(1,4)", "1/60", [0, 0, 1, 1, 1, 2]),
    row(2, "5x(1,2),2x(1,3),(2,7),(1,4)", "1/84", [0, 1, 0, 1, 1, 2]),
    row(3, "5x(1,2),2x(1,3),(3,11)", "1/66", [0, 1, 0, 1, 1, 2]),
    row(4, "5x(1,2),(1,3),(3,10),(1,4)", "1/60", [0, 1, 0, 1, 1, 2]),
    row(5, "5x(1,2),(1,3),2x(2,7)", "1/42", [0, 1, 0, 1, 2, 3]),
    row(6, "4x(1,2),(2,5),2x(1,3),2x(1,4)", "1/30", [0, 1, 1, 2, 2, 4]),
    row(7, "3x(1,2),(2,5),5x(1,3)", "1/30", [1, 1, 1, 3, 3, 4]),
    row(8, "2x(1,2),(3,7),5x(1,3)", "1/21", [1, 1, 1, 3, 4, 5]),
    row(9, "(1,2),(4,9),5x(1,3)", "1/18", [1, 1, 1, 3, 4, 5]),
    row(10, "3x(1,2),(3,8),4x(1,3)", "1/24", [1, 1, 1, 3, 3, 5]),
    row(11, "3x(1,2),(4,11),3x(1,3)", "1/22", [1, 1, 1, 3, 3, 5]),
    row(12, "3x(1,2),(5,14),2x(1,3)", "1/21", [1, 1, 1, 3, 3, 5]),
    row(13, "2x(1,2),2x(2,5),4x(1,3)", "1/15", [1, 1, 2, 4, 5, 7]),
    row(14, "(1,2),(3,7),(2,5),4x(1,3)", "17/210", [1, 1, 2, 4, 6, 8]),
    row(15, "2x(1,2),(2,5),(3,8),3x(1,3)", "3/40", [1, 1, 2, 4, 5, 8]),
    row(16, "2x(1,2),(5,13),3x(1,3)", "1/13", [1, 1, 2, 4, 5, 8]),
    row(17, "(1,2),3x(2,5),3x(1,3)", "1/10", [1, 1, 3, 5, 7, 10]),
    row(18, "4x(1,2),5x(1,3),(1,4)", "1/12", [1, 2, 2, 5, 6, 9]),
    row(19, "4x(1,2),4x(1,3),(2,7)", "2/21", [1, 2, 2, 5, 7, 10]),
    row(20, "4x(1,2),3x(1,3),(3,10)", "1/10", [1, 2, 2, 5, 7, 10]),
    row(21, "3x(1,2),(2,5),4x(1,3),(1,4)", "7/60", [1, 2, 3, 6, 8, 12]),
    row(22, "3x(1,2),7x(1,3)", "1/6", [2, 3, 4, 9, 12, 17]),
    row(23, "2x(1,2),(2,5),6x(1,3)", "1/5", [2, 3, 5, 10, 14, 20]),
];

/// The row number of `basket`, if it appears in the table.
pub fn lookup(basket: &Basket) -> Option<u32> {
    TABLE_A.iter().find(|r| r.basket() == *basket).map(|r| r.no)
}
