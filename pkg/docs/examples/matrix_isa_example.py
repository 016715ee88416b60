"""
Independent subspace analysis of an i.i.d. sample: two 3D wireframes and a 2D glyph, linearly mixed
"""

from ipa_engine.arfit import OrderRule
from ipa_engine.evaluation import block_permutation_index
from ipa_engine.evaluation import global_transform
from ipa_engine.isa import ClusterRule
from ipa_engine.isa import DimRule
from ipa_engine.pipeline import PipelineConfig
from ipa_engine.pipeline import separate
from ipa_engine.synth import SourceSpec
from ipa_engine.synth import SystemSpec
from ipa_engine.synth import draw_sources
from ipa_engine.synth import simulate
from ipa_engine.tsmodel import ComponentLayout


def main() -> None:
    layout = ComponentLayout((3, 3, 2))
    system = SystemSpec(p=0, q=0, r=0, D_x=8, D_s=8, D_e=8, seed=7, burn_in=0)
    observations, truth = simulate(system, draw_sources(SourceSpec.default(layout, seed=7), 10_000), layout)

    config = PipelineConfig(
        min_ar_order=0,
        max_ar_order=0,
        order_rule=OrderRule.fixed(0),
        dim_rule=DimRule.fixed(8),
        cluster_rule=ClusterRule.eigengap(),
        seed=7,
    )
    pipeline, _ = separate(observations, config)

    print('clusters:', pipeline.partition.clusters)  # noqa: T201
    print('index:', block_permutation_index(global_transform(pipeline, truth)))  # noqa: T201


if __name__ == '__main__':
    main()
