//! The two coordinate axes against the box [1,2] x [-3,3].
//!
//! Two zone cells (x > 0 on either side of the x-axis), the origin is an
//! outer vertex of both, and the positive y-axis and negative y-axis are
//! outer edges of one each: tau_0 = 2, tau_1 = 2. The recurrence for i = 1
//! is tight at 2 = 2.

use zonelab::arrangement::{build_arrangement, Hyperplane};
use zonelab::body::ConvexBody;
use zonelab::exact::vector;
use zonelab::verify::{check_recurrence, RecurrenceData};
use zonelab::zone::{zone_report, ZoneReport};

fn main() -> zonelab::error::Result<()> {
    let hs = vec![
        Hyperplane::from_ints(&[1, 0], 0)?,
        Hyperplane::from_ints(&[0, 1], 0)?,
    ];
    let body = ConvexBody::axis_box(&vector(&[1, -3]), &vector(&[2, 3]))?;
    let report = zone_report(&build_arrangement(hs.clone(), 2)?, &body)?;
    println!("{}\n{}", ZoneReport::csv_header(), report.csv_row());

    if let Ok(data) = RecurrenceData::compute(&hs, &body) {
        println!("deleted: {:?}", data.deleted);
        println!("restricted: {:?}", data.restricted);
    }
    println!("{}", check_recurrence(&hs, &body, 1).csv_row());
    Ok(())
}
