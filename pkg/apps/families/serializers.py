from rest_framework import serializers

from apps.hypercore.serializers import HypergraphSerializer

from .exceptions import FamilyParameterError
from .structures import RootedHypergraph


class RootedHypergraphSerializer(HypergraphSerializer):
    root = serializers.IntegerField(min_value=0, default=0)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        try:
            attrs['rooted'] = RootedHypergraph(attrs['hypergraph'], attrs['root'])
        except FamilyParameterError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def to_representation(self, instance):
        data = instance.graph.to_dict()
        data['root'] = instance.root
        return data


class SpineLabeledHypergraphSerializer(serializers.Serializer):
    """Construction output: the graph plus its spine roles"""

    def to_representation(self, instance):
        data = instance.graph.to_dict()
        data['spine'] = list(instance.spine)
        data['spine_edges'] = [list(instance.graph.edges[i]) for i in instance.spine_edges]
        data['interior_reps'] = {str(i): w for i, w in sorted(instance.interior_reps.items())}
        data['pendant_reps'] = {str(i): v for i, v in sorted(instance.pendant_reps.items())}
        data['attachments'] = {
            str(i): sorted(instance.attachment_vertices(i)) for i in sorted(instance.attachment_maps)
        }
        if instance.core_index is not None:
            data['core_index'] = instance.core_index
        return data
