# Cache for window ledgers
