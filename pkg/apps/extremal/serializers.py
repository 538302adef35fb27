from rest_framework import serializers

from .exceptions import ExtremalError
from .structures import FamilyKey


class FamilyKeySerializer(serializers.Serializer):
    k = serializers.IntegerField(min_value=2)
    m = serializers.IntegerField(min_value=1)
    delta = serializers.IntegerField(min_value=3)
    n = serializers.IntegerField(min_value=2)
    m_star = serializers.IntegerField(read_only=True)

    def validate(self, attrs):
        try:
            attrs['key'] = FamilyKey(attrs['k'], attrs['m'], attrs['delta'], attrs['n'])
        except ExtremalError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def to_representation(self, instance):
        return instance.as_dict()


class ExtremalReportSerializer(serializers.Serializer):
    """One line of the extremal JSON-lines output"""

    family = FamilyKeySerializer(allow_null=True)
    population = serializers.IntegerField()
    candidates = serializers.IntegerField()
    argmax = serializers.ListField(child=serializers.CharField())
    max_rho = serializers.FloatField(allow_null=True)
    runner_up_rho = serializers.FloatField(allow_null=True)
    predicted = serializers.CharField(allow_null=True)
    verdict = serializers.BooleanField()
    caterpillars_only = serializers.BooleanField()
    edge_degree_ok = serializers.BooleanField()
    empty = serializers.BooleanField(read_only=True)


class ExtremalSummarySerializer(serializers.Serializer):
    """Flat row for the CSV summary table"""

    k = serializers.IntegerField(source='family.k')
    m = serializers.IntegerField(source='family.m')
    delta = serializers.IntegerField(source='family.delta')
    n = serializers.IntegerField(source='family.n')
    m_star = serializers.IntegerField(source='family.m_star')
    population = serializers.IntegerField()
    candidates = serializers.IntegerField()
    max_rho = serializers.FloatField(allow_null=True)
    verdict = serializers.BooleanField()
