from rest_framework import serializers

from .exceptions import HypergraphError
from .hypergraph import Hypergraph


class HypergraphSerializer(serializers.Serializer):
    """Canonical JSON form of a hypergraph"""

    vertex_count = serializers.IntegerField(min_value=0)
    edges = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=False),
    )

    def validate(self, attrs):
        try:
            attrs['hypergraph'] = Hypergraph(attrs['vertex_count'], tuple(tuple(e) for e in attrs['edges']))
        except HypergraphError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def to_representation(self, instance):
        return instance.to_dict()
