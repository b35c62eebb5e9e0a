package com.demo.model;

import java.util.Objects;

/**
 * Base type for persisted records.
 */
public abstract class Entity implements Identifiable {
    protected final String id;
    private long version;

    protected Entity(String id) {
        if (id == null || id.isEmpty()) {
            throw new IllegalArgumentException("id must not be empty");
        }
        this.id = id;
    }

    @Override
    public String getId() {
        return id;
    }

    public long getVersion() {
        return version;
    }

    void touch() {
        version++;
    }

    @Override
    public boolean equals(Object other) {
        if (this == other) return true;
        if (other == null || getClass() != other.getClass()) return false;
        return id.equals(((Entity) other).id);
    }

    @Override
    public int hashCode() {
        return Objects.hash(id);
    }
}
