"""Hard-instance generators and verifiers for the lower-bound constructions."""
