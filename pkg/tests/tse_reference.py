"""Published reference statistics for five liquid TSE stocks.

Used as pure-arithmetic fixtures: signature-fit parameters with the
5-minute bias they imply, and standardized-return statistics with their
bias-corrected standard deviations, as printed in the source tables.
"""

# stock, session, a0, a1 (minutes), printed bias at 5 min
SIGNATURE_FITS = [
    ("Mitsubishi", "MS", 2.5e-4, 0.705, 0.141),
    ("Nomura", "MS", 2.5e-4, 0.366, 0.073),
    ("NipponSteel", "MS", 2.0e-4, 1.09, 0.228),
    ("Panasonic", "MS", 1.6e-4, 0.643, 0.126),
    ("Sony", "MS", 1.7e-4, 0.780, 0.156),
    ("Mitsubishi", "AS", 1.8e-4, 1.58, 0.316),
    ("Nomura", "AS", 1.8e-4, 0.897, 0.179),
    ("NipponSteel", "AS", 1.7e-4, 1.88, 0.376),
    ("Panasonic", "AS", 1.1e-4, 1.59, 0.318),
    ("Sony", "AS", 1.2e-4, 1.80, 0.360),
]

# Two of the printed 5-minute bias values are not a1/5 of the same row
# (NipponSteel MS: 1.09/5 = 0.218 vs printed 0.228; Panasonic MS:
# 0.643/5 = 0.1286 vs printed 0.126).  The source table is internally
# inconsistent there; the values are kept exactly as printed.
INCONSISTENT_BIAS_ROWS = {("NipponSteel", "MS"), ("Panasonic", "MS")}

# stock, session, sigma of standardized returns, printed bias at 5 min,
# printed bias-corrected std, printed AD p-value
STANDARDIZED_STATS = [
    ("Mitsubishi", "MS", 0.915, 0.141, 0.977, 0.310),
    ("Nomura", "MS", 0.951, 0.073, 0.985, 0.208),
    ("NipponSteel", "MS", 0.909, 0.228, 1.007, 0.115),
    ("Panasonic", "MS", 0.895, 0.126, 0.950, 0.065),
    ("Sony", "MS", 0.921, 0.156, 0.990, 0.085),
    ("Mitsubishi", "AS", 0.787, 0.316, 0.903, 0.159),
    ("Nomura", "AS", 0.825, 0.179, 0.896, 0.063),
    ("NipponSteel", "AS", 0.837, 0.376, 0.982, 0.087),
    ("Panasonic", "AS", 0.795, 0.318, 0.913, 0.266),
    ("Sony", "AS", 0.820, 0.360, 0.957, 0.196),
]

# standardized-return kurtoses as printed (MS slightly below 3, AS near 3)
STANDARDIZED_KURTOSES = {
    ("Mitsubishi", "MS"): 2.75,
    ("Nomura", "MS"): 2.68,
    ("NipponSteel", "MS"): 2.79,
    ("Panasonic", "MS"): 2.66,
    ("Sony", "MS"): 2.66,
    ("Mitsubishi", "AS"): 3.18,
    ("Nomura", "AS"): 3.21,
    ("NipponSteel", "AS"): 3.20,
    ("Panasonic", "AS"): 2.91,
    ("Sony", "AS"): 3.16,
}
