# Mean-Field Bandwidth Negotiation
