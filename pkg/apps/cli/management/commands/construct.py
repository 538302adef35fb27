from apps.families.serializers import SpineLabeledHypergraphSerializer
from apps.families.specs import build
from apps.families.structures import SpineLabeledHypergraph
from apps.hypercore import io
from apps.hypercore.services import HypergraphService

from ...base import ReportCommand, RunOutput


class Command(ReportCommand):
    help = 'Build a family member from a spec such as cat:3,5,3,1,2 and write its canonical JSON'

    def add_command_arguments(self, parser):
        parser.add_argument('spec', help='star:m,k | path:m,k | cat:k,mstar,delta,a,b | gc:k,s,t,c,core=<file>')
        parser.add_argument('--roles', action='store_true', help='Include spine roles in the output')

    def run(self, **options):
        built = build(options['spec'])
        g = built.graph
        if options['roles'] and isinstance(built, SpineLabeledHypergraph):
            document = SpineLabeledHypergraphSerializer(built).data
        else:
            document = io.dumps(g)
        row = {
            'spec': options['spec'],
            'vertices': g.vertex_count,
            'edges': g.edge_count,
            'max_degree': g.max_degree,
            'hypertree': HypergraphService.is_hypertree(g),
        }
        self.stderr.write(f'{options["spec"]}: {g.vertex_count} vertices, {g.edge_count} edges')
        return RunOutput(document, [row])
