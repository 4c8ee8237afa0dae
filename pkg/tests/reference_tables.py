"""Reference projection score tables used as metric-arithmetic fixtures.

Each row is (label, C, FP, FN, P, R, F1). The Overall row of every table is
the componentwise sum of the rows above it. A few cells (flagged below and
listed in the evaluator test's anomaly map) contradict their own row counts:
two rows report recall 1.0 for C=0, FN=0 where every other row uses the
0/0 -> 0 convention, and one R/F1 pair does not follow from C=5, FN=50.
Those cells are asserted at the value the counts imply.
"""

TOPK_ZH_SL = [
    ("predicates", 442, 56, 228, 88.76, 65.97, 75.68),
    ("agent", 103, 87, 213, 54.21, 32.59, 40.71),
    ("asset", 0, 1, 1, 0, 0, 0),
    ("attribute", 0, 12, 22, 0, 0, 0),
    ("beneficiary", 5, 15, 28, 25, 15.15, 18.87),
    ("cause", 0, 1, 2, 0, 0, 0),
    ("co-agent", 0, 2, 10, 0, 0, 0),
    ("co-patient", 0, 1, 3, 0, 0, 0),
    ("co-theme", 3, 6, 12, 33.33, 20, 25),
    ("destination", 2, 10, 14, 16.67, 12.5, 14.29),
    ("experiencer", 1, 5, 25, 16.67, 3.85, 6.25),
    ("extent", 0, 3, 5, 0, 0, 0),
    ("goal", 4, 35, 47, 10.26, 7.84, 8.89),
    ("instrument", 0, 7, 7, 0, 0, 0),
    ("location", 0, 6, 12, 0, 0, 0),
    ("material", 0, 2, 0, 0, 0, 0),
    ("patient", 21, 54, 110, 28, 16.03, 20.39),
    ("product", 0, 2, 4, 0, 0, 0),
    ("recipient", 8, 14, 31, 36.36, 20.51, 26.23),
    ("result", 1, 7, 20, 12.5, 4.76, 6.9),
    ("source", 2, 8, 18, 20, 10, 13.33),
    ("stimulus", 1, 4, 25, 20, 3.85, 6.45),
    ("theme", 57, 106, 268, 34.97, 17.54, 23.36),
    ("topic", 10, 30, 53, 25, 15.87, 19.42),
    ("value", 0, 3, 1, 0, 0, 0),
]
TOPK_ZH_SL_OVERALL = (660, 477, 1159, 58.05, 36.28, 44.65)

TOPK_EN_SL = [
    ("predicates", 326, 37, 565, 89.81, 36.59, 51.99),
    ("agent", 64, 39, 312, 62.14, 17.02, 26.72),
    ("asset", 0, 0, 1, 0, 0, 0),
    ("attribute", 0, 4, 34, 0, 0, 0),
    ("beneficiary", 4, 6, 51, 40, 7.27, 12.31),
    ("cause", 0, 1, 2, 0, 0, 0),
    ("co-agent", 0, 0, 6, 0, 0, 0),
    ("co-patient", 0, 0, 3, 0, 0, 0),
    ("co-theme", 1, 1, 20, 50, 4.76, 8.7),
    ("destination", 0, 3, 24, 0, 0, 0),
    ("experiencer", 0, 6, 18, 0, 0, 0),
    ("extent", 0, 0, 8, 0, 0, 0),
    ("goal", 2, 15, 92, 11.76, 2.13, 3.6),
    ("instrument", 0, 1, 16, 0, 0, 0),
    ("location", 0, 2, 14, 0, 0, 0),
    ("material", 0, 0, 3, 0, 0, 0),
    ("patient", 15, 21, 182, 41.67, 7.61, 12.88),
    ("product", 0, 2, 6, 0, 0, 0),
    ("recipient", 5, 13, 50, 27.78, 9.43, 14.08),  # R/F1 inconsistent with counts

    ("result", 0, 3, 23, 0, 0, 0),
    ("source", 0, 6, 22, 0, 0, 0),
    ("stimulus", 0, 7, 21, 0, 0, 0),
    ("theme", 25, 54, 347, 31.65, 6.72, 11.09),
    ("time", 0, 0, 1, 0, 0, 0),
    ("topic", 9, 8, 85, 52.94, 9.57, 16.22),
    ("value", 0, 0, 11, 0, 0, 0),
]
TOPK_EN_SL_OVERALL = (451, 229, 1917, 66.32, 19.05, 29.59)

OT_ZH_SL = [
    ("predicates", 319, 47, 351, 87.16, 47.61, 61.58),
    ("agent", 205, 129, 176, 61.38, 53.81, 57.35),
    ("asset", 0, 0, 1, 0.0, 0.0, 0.0),
    ("attribute", 1, 4, 21, 20.0, 4.55, 7.41),
    ("beneficiary", 10, 21, 23, 32.26, 30.3, 31.25),
    ("cause", 1, 1, 1, 50.0, 50.0, 50.0),
    ("co-agent", 0, 2, 10, 0.0, 0.0, 0.0),
    ("co-patient", 0, 2, 3, 0.0, 0.0, 0.0),
    ("co-theme", 4, 3, 12, 57.14, 25.0, 34.78),
    ("destination", 1, 4, 15, 20.0, 6.25, 9.52),
    ("experiencer", 3, 7, 24, 30.0, 11.11, 16.22),
    ("extent", 1, 3, 4, 25.0, 20.0, 22.22),
    ("goal", 11, 38, 40, 22.45, 21.57, 22.0),
    ("instrument", 0, 5, 7, 0.0, 0.0, 0.0),
    ("location", 0, 3, 12, 0.0, 0.0, 0.0),
    ("material", 0, 1, 0, 0.0, 0.0, 0.0),   # reported R=1.0; see module docstring
    ("patient", 50, 36, 84, 58.14, 37.31, 45.45),
    ("product", 1, 1, 3, 50.0, 25.0, 33.33),
    ("recipent", 0, 1, 0, 0.0, 0.0, 0.0),   # reported R=1.0; see module docstring
    ("recipient", 15, 16, 24, 48.39, 38.46, 42.86),
    ("result", 3, 14, 18, 17.65, 14.29, 15.79),
    ("source", 0, 9, 20, 0.0, 0.0, 0.0),
    ("stimulus", 3, 5, 23, 37.5, 11.54, 17.65),
    ("theme", 95, 131, 251, 42.04, 27.46, 33.22),
    ("topic", 20, 38, 44, 34.48, 31.25, 32.79),
    ("value", 0, 0, 1, 0.0, 0.0, 0.0),
]
OT_ZH_SL_OVERALL = (743, 521, 1168, 58.78, 38.88, 46.8)

OT_EN_SL = [
    ("predicates", 274, 27, 617, 91.03, 30.75, 45.97),
    ("agent", 212, 116, 297, 64.63, 41.65, 50.66),
    ("asset", 0, 1, 1, 0.0, 0.0, 0.0),
    ("attribute", 1, 5, 36, 16.67, 2.7, 4.65),
    ("beneficiary", 9, 8, 47, 52.94, 16.07, 24.66),
    ("cause", 1, 1, 1, 50.0, 50.0, 50.0),
    ("co-agent", 0, 4, 7, 0.0, 0.0, 0.0),
    ("co-patient", 0, 3, 3, 0.0, 0.0, 0.0),
    ("co-theme", 4, 2, 17, 66.67, 19.05, 29.63),
    ("destination", 1, 2, 23, 33.33, 4.17, 7.41),
    ("experiencer", 4, 7, 14, 36.36, 22.22, 27.58),
    ("extent", 0, 2, 8, 0.0, 0.0, 0.0),
    ("goal", 9, 18, 92, 33.33, 8.91, 14.06),
    ("instrument", 0, 1, 16, 0.0, 0.0, 0.0),
    ("location", 0, 3, 14, 0.0, 0.0, 0.0),
    ("material", 0, 0, 3, 0.0, 0.0, 0.0),
    ("patient", 48, 26, 165, 64.86, 22.54, 33.45),
    ("product", 1, 1, 5, 50.0, 16.67, 25.0),
    ("recipent", 0, 0, 2, 0.0, 0.0, 0.0),
    ("recipient", 12, 7, 42, 63.16, 22.22, 32.87),
    ("result", 3, 7, 21, 30.0, 12.5, 17.65),
    ("source", 0, 5, 25, 0.0, 0.0, 0.0),
    ("stimulus", 3, 10, 18, 23.08, 14.29, 17.65),
    ("theme", 90, 88, 335, 50.56, 21.18, 29.85),
    ("time", 0, 0, 1, 0.0, 0.0, 0.0),
    ("topic", 21, 15, 76, 58.33, 21.65, 31.58),
    ("value", 0, 1, 12, 0.0, 0.0, 0.0),
]
OT_EN_SL_OVERALL = (693, 360, 1898, 65.81, 26.75, 38.04)

ALL_TABLES = [
    ("topk_zh", TOPK_ZH_SL, TOPK_ZH_SL_OVERALL),
    ("topk_en", TOPK_EN_SL, TOPK_EN_SL_OVERALL),
    ("ot_zh", OT_ZH_SL, OT_ZH_SL_OVERALL),
    ("ot_en", OT_EN_SL, OT_EN_SL_OVERALL),
]

# category counts from the divergence analysis, per source language
DIVERGENCE_ZH_SL = {"counts": (537, 240, 284, 137), "total": 1198,
                    "percentages": (44.8, 20.0, 23.7, 11.4)}
DIVERGENCE_EN_SL = {"counts": (537, 244, 76, 52), "total": 909,
                    "percentages": (59.1, 26.8, 8.3, 5.7)}
