"""Network model, tables and exact polynomial arithmetic shared by the bnalg toolkit."""
