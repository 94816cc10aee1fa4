"""Process segments and closed cycles on the (S, V) chart with first-law bookkeeping."""
