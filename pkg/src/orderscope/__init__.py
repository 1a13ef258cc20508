"""Transfer Krull decisions for orders in quadratic number fields."""
