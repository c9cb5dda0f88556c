# rankform/templates/messages.py
class Messages:
    DESCRIPTION = """
rankform {version}: normalized, non-normalized and rescaled PageRank,
closed forms for lines and complete graphs, and their c-dependence.
"""

    ERROR = "error: {message}"

    INVALID_CONFIG = "error: invalid configuration, see the log for details"

    NEAR_SINGULAR = (
        "warning: c={c} is close to 1; (I - cA^T) is nearly singular and "
        "R2 values grow like 1/(1-c)"
    )

    NORMALIZER = "# normalizer={value}"

    ANALYTIC_NORMALIZER = "# analytic_normalizer={value}"

    CMAX = "c_max={c_max}, max={value}, boundary_hit={boundary}"

    BOUND = "{value}"

    HIT = "from={source},to={target},probability={probability},stderr={stderr},truncated={truncated}"

    TRUNCATED = "# truncated={count}"

    COMPARE_HEADER = "# c={c}: complete graph on 4 nodes vs 4 dangling nodes"

    GENERATED = "wrote {spec} ({n} nodes, {edges} edges) to {path}"

    SVG_WRITTEN = "wrote sweep chart to {path}"
