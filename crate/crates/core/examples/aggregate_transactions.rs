//! Roll a timestamped transaction log up to monthly demand, filling empty months with zero.

use bass_tail::{aggregate_transactions, parse_transaction_csv, ColumnSelector, Granularity, IngestOptions};

const LOG: &str = "order_id,created_at,quantity
1,2021-01-04T09:12:00,2
2,2021-01-19,1
3,2021-03-02 14:30:00,5
4,2021-03-28,3
5,2021-04-11T08:00:00Z,1
";

fn main() -> Result<(), bass_tail::Error> {
    let opts = IngestOptions {
        date_column: ColumnSelector::Name("created_at".into()),
        value_column: ColumnSelector::Name("quantity".into()),
        ..IngestOptions::default()
    };
    let series = parse_transaction_csv(LOG, &opts)?;
    for (period, demand) in series.periods().iter().zip(series.demands()) {
        println!("{period}  {demand}");
    }

    let rows = [("2022-11-30", 4u64), ("2023-01-01", 6)];
    let rolled = aggregate_transactions(&rows, Granularity::Monthly)?;
    println!("{:?} -> {:?}", rolled.periods(), rolled.demands());
    Ok(())
}
